import os
import random
import sys
import unittest

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.core.catalog import catalog, parse_curve
from src.core.errors import DomainError
from src.core.function_field import (Divisor, FunctionElement, PlaceRef, enumerate_places, evaluate,
                                     local_expansion, principal_divisor, random_place, series_mul,
                                     valuation)
from src.core.poly import Poly
from src.core.riemann_roch import RiemannRochSpace, speciality_index


def random_function(curve, rng, degree=3):
    """a(x) + b(x) y with a nonzero constant term"""
    F = curve.field
    elements = list(F.elements())
    a = [rng.choice(elements) for _ in range(degree + 1)]
    a[0] = F.one
    b = [rng.choice(elements) for _ in range(degree)]
    return FunctionElement(curve, Poly(F, a), Poly(F, b))


def random_effective(places, rng, size):
    return Divisor.from_places((rng.choice(places), rng.randint(1, 2)) for _ in range(size))


class TestPlaces(unittest.TestCase):
    def setUp(self):
        self.curve = parse_curve(3, 'y^2 + 2x^3 + 2x^2 + 1 = 0')

    def test_enumeration_counts(self):
        for d, expected in ((1, 3), (2, 6), (3, 11)):
            places = enumerate_places(self.curve, d)
            self.assertEqual(len(places), expected)
            self.assertTrue(all(P.degree == d for P in places))
        self.assertTrue(enumerate_places(self.curve, 1)[0].is_infinity)

    def test_random_place_is_deterministic(self):
        P = random_place(self.curve, 7, seed='a')
        self.assertEqual(P, random_place(self.curve, 7, seed='a'))
        self.assertEqual(P.degree, 7)
        self.assertEqual(P.x_minpoly.degree, 7)

    def test_place_json_round_trip(self):
        P = random_place(self.curve, 5, seed=2)
        self.assertEqual(PlaceRef.from_json(self.curve, P.to_json()), P)

    def test_divisor_arithmetic(self):
        P, R = enumerate_places(self.curve, 1)[1], enumerate_places(self.curve, 2)[0]
        D = Divisor({P: 2, R: 1})
        self.assertEqual(D.degree, 4)
        self.assertTrue(D.is_effective())
        self.assertFalse((D - Divisor({R: 2})).is_effective())
        self.assertEqual((D * 2).degree, 8)
        self.assertFalse(D.is_disjoint(Divisor({R: 1})))


class TestLocalExpansions(unittest.TestCase):
    def setUp(self):
        self.rng = random.Random(5)

    def test_evaluate_coordinates(self):
        curve = parse_curve(3, 'y^2 = x^3 + x^2 + 2')
        x, y = FunctionElement.x(curve), FunctionElement.y(curve)
        for P in enumerate_places(curve, 2):
            self.assertEqual(evaluate(x, P), P.point.x)
            self.assertEqual(evaluate(y, P), P.point.y)

    def test_jet_multiplicativity(self):
        """Test jet(f g) = jet(f) jet(g) mod t^u at finite places"""
        curves = [e.curve for q in (2, 3) for e in catalog(q)]
        for _ in range(200):
            curve = self.rng.choice(curves)
            d = self.rng.randint(1, 3)
            places = [P for P in enumerate_places(curve, d) if not P.is_infinity]
            if not places:
                continue
            P = self.rng.choice(places)
            u = self.rng.randint(1, 3)
            f, g = random_function(curve, self.rng), random_function(curve, self.rng)
            jf, jg = local_expansion(f, P, u), local_expansion(g, P, u)
            expected = series_mul(P.field, list(jf.coeffs), list(jg.coeffs), u)
            self.assertEqual(list(local_expansion(f * g, P, u).coeffs), expected)

    def test_valuation_of_x_minus_x0(self):
        """Test div(x - x0) = P + P' - 2 P_inf at a rational point"""
        curve = parse_curve(3, 'y^2 = x^3 + x^2 + 2')
        F = curve.field
        inf = PlaceRef.infinity(curve)
        P = [p for p in enumerate_places(curve, 1) if not p.is_infinity][0]
        f = FunctionElement(curve, Poly(F, [F.neg(P.point.x), F.one]))
        self.assertEqual(valuation(f, P), 1)
        self.assertEqual(valuation(f, P.opposite()), 1)
        self.assertEqual(valuation(f, inf), -2)
        divisor = principal_divisor(f, [P, P.opposite(), inf])
        self.assertEqual(divisor.degree, 0)
        self.assertTrue(curve.sigma(divisor).is_infinity)

    def test_pole_raises(self):
        curve = parse_curve(3, 'y^2 = x^3 + x^2 + 2')
        F = curve.field
        P = [p for p in enumerate_places(curve, 1) if not p.is_infinity][0]
        f = FunctionElement(curve, Poly.one(F), None, Poly(F, [F.neg(P.point.x), F.one]))
        with self.assertRaises(DomainError):
            local_expansion(f, P, 2)


class TestRiemannRoch(unittest.TestCase):
    def setUp(self):
        self.rng = random.Random(17)

    def test_dimension_equals_degree(self):
        """Test l(D) = deg D and the pole bounds of each basis function"""
        curves = [e.curve for q in (2, 3, 5) for e in catalog(q)]
        for _ in range(200):
            curve = self.rng.choice(curves)
            # L(D) needs places generated by their x-coordinate
            places = [P for d in (1, 2, 3) for P in enumerate_places(curve, d)
                      if P.is_infinity or P.x_minpoly.degree == d]
            D = random_effective(places, self.rng, self.rng.randint(1, 3))
            space = RiemannRochSpace(curve, D)
            self.assertEqual(space.dimension, D.degree)
            for f in space.functions()[:3]:
                for P in D.support:
                    self.assertGreaterEqual(valuation(f, P), -D.multiplicity(P))

    def test_extension_keeps_prefix(self):
        curve = parse_curve(3, 'y^2 = x^3 + x^2 + 2')
        D = Divisor({random_place(curve, 4, seed=1): 1})
        small = RiemannRochSpace(curve, D)
        large = RiemannRochSpace(curve, D * 2, extend=small)
        self.assertEqual(large.dimension, 8)
        self.assertEqual(large.functions()[:4], small.functions())

    def test_rejects_non_effective(self):
        curve = parse_curve(3, 'y^2 = x^3 + x^2 + 2')
        P = enumerate_places(curve, 2)[0]
        with self.assertRaises(DomainError):
            RiemannRochSpace(curve, Divisor({P: -1}))

    def test_speciality(self):
        curve = parse_curve(3, 'y^2 = x^3 + x^2 + 2')
        P = [p for p in enumerate_places(curve, 1) if not p.is_infinity][0]
        inf = PlaceRef.infinity(curve)
        self.assertEqual(speciality_index(curve, Divisor({P: 1}) - Divisor({inf: 1})), 0)
        self.assertEqual(speciality_index(curve, Divisor({P: 1}) - Divisor({P: 1})), 1)
        self.assertEqual(speciality_index(curve, Divisor({P: 2})), 0)


class TestSigma(unittest.TestCase):
    def test_morphism(self):
        """Test sigma(D1 + D2) = sigma(D1) + sigma(D2)"""
        rng = random.Random(23)
        curves = [e.curve for q in (2, 3) for e in catalog(q)]
        for _ in range(100):
            curve = rng.choice(curves)
            places = [P for d in (1, 2, 3, 4) for P in enumerate_places(curve, d)]
            D1 = random_effective(places, rng, rng.randint(1, 3))
            D2 = random_effective(places, rng, rng.randint(1, 3))
            self.assertEqual(curve.sigma(D1 + D2), curve.add(curve.sigma(D1), curve.sigma(D2)))

    def test_trivial_on_case_a(self):
        curve = catalog(3)[0].curve
        P = random_place(curve, 5, seed=0)
        self.assertTrue(curve.sigma(Divisor({P: 1})).is_infinity)


if __name__ == '__main__':
    unittest.main()
