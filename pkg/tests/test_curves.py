import os
import random
import sys
import unittest

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.core.catalog import CATALOG, catalog, parse_curve, select_curve
from src.core.curves import INFINITY, Curve
from src.core.errors import DomainError, ValidationError
from src.core.fields import galois_field


class TestCatalog(unittest.TestCase):
    def test_listed_cases_match_classification(self):
        """Test that every catalog curve classifies as listed"""
        for q in CATALOG:
            for entry in catalog(q):
                self.assertEqual(entry.classification.case, entry.listed_case, entry.equation)

    def test_two_torsion_curves(self):
        """Test the case-c curves: four rational points forming Z/2 x Z/2"""
        for q in (3, 5, 7, 9):
            entries = [e for e in catalog(q) if e.listed_case == 'c']
            self.assertEqual(len(entries), 1)
            cls = entries[0].classification
            self.assertEqual(cls.n1, 4)
            self.assertEqual(cls.group, (2, 2))
            self.assertEqual(cls.slack, 1)

    def test_case_slacks(self):
        self.assertEqual(catalog(3)[0].classification.slack, 3)
        self.assertEqual(catalog(3)[1].classification.slack, 1)
        self.assertTrue(catalog(3)[1].classification.sigma_caveat)
        self.assertEqual(catalog(3)[6].classification.slack, 0)

    def test_parser_normalizes(self):
        """Test that equivalent spellings give the same Weierstrass coefficients"""
        a = parse_curve(3, 'y^2 + 2x^3 + 2x^2 + 1 = 0')
        b = parse_curve(3, 'y^2 = x^3 + x^2 + 2')
        self.assertEqual(a, b)
        self.assertEqual(a.coefficients, (0, 1, 0, 0, 2))

    def test_parser_rejects_non_weierstrass(self):
        with self.assertRaises(ValidationError):
            parse_curve(3, 'y^3 + x = 0')
        with self.assertRaises(ValidationError):
            parse_curve(3, 'y^2 + x^2 + 1 = 0')

    def test_singular_curve(self):
        with self.assertRaises(DomainError):
            parse_curve(3, 'y^2 - x^3 = 0')

    def test_select_curve(self):
        self.assertEqual(select_curve(3, '6'), catalog(3)[6].curve)
        self.assertEqual(select_curve(3, '[0, 1, 0, 0, 2]'), catalog(3)[6].curve)
        with self.assertRaises(ValidationError):
            select_curve(3, '99')

    def test_unsupported_q(self):
        with self.assertRaises(DomainError):
            catalog(8)


class TestPlaceCounts(unittest.TestCase):
    def test_supersingular_f2(self):
        """Test B_d for y^2 + y = x^3 over F_2 from the zeta function"""
        curve = parse_curve(2, 'y^2 + y + x^3 = 0')
        zeta = curve.zeta_counts(8)
        self.assertEqual(zeta.trace, 0)
        self.assertEqual(list(zeta.place_counts), [3, 3, 2, 0, 6, 11, 18, 27])

    def test_f3_curve(self):
        curve = parse_curve(3, 'y^2 = x^3 + x^2 + 2')
        self.assertEqual(list(curve.zeta_counts(5).place_counts), [3, 6, 11, 15, 42])

    def test_zeta_matches_enumeration(self):
        """Test B_d from the zeta function against orbit enumeration"""
        cases = [(parse_curve(2, 'y^2 + y + x^3 = 0'), 8), (parse_curve(3, 'y^2 = x^3 + x^2 + 2'), 4)]
        cases += [(e.curve, 2) for e in catalog(4)] + [(e.curve, 3) for e in catalog(5)]
        for curve, dmax in cases:
            zeta = curve.zeta_counts(dmax)
            for d in range(1, dmax + 1):
                self.assertEqual(curve.count_places(d), zeta.B(d), f"{curve!r}, d={d}")

    def test_hasse_bound(self):
        for q in CATALOG:
            for entry in catalog(q):
                zeta = entry.curve.zeta_counts(1)
                self.assertLessEqual(zeta.trace ** 2, 4 * q)


class TestGroupLaw(unittest.TestCase):
    def setUp(self):
        self.curve = parse_curve(3, 'y^2 + 2x^3 + 2x^2 + 1 = 0')
        self.F = self.curve.extension(3)
        self.points = self.curve.enumerate_points(3, self.F)
        self.rng = random.Random(11)

    def test_identity_and_inverse(self):
        for P in self.points[:20]:
            self.assertEqual(self.curve.add(P, INFINITY, self.F), P)
            self.assertTrue(self.curve.add(P, self.curve.neg(P, self.F), self.F).is_infinity)

    def test_associativity(self):
        curve, F = self.curve, self.F
        for _ in range(50):
            P, Q, R = (self.rng.choice(self.points) for _ in range(3))
            self.assertEqual(curve.add(curve.add(P, Q, F), R, F), curve.add(P, curve.add(Q, R, F), F))

    def test_group_order_annihilates(self):
        """Test that #C(F_27) kills every point"""
        order = len(self.points)
        self.assertEqual(order, self.curve.zeta_counts(3).N(3))
        for P in self.rng.sample(self.points, 10):
            self.assertTrue(self.curve.multiply(P, order, self.F).is_infinity)

    def test_characteristic_two(self):
        curve = parse_curve(2, 'y^2 + xy + x^3 + x^2 + 1 = 0')
        F = curve.extension(4)
        points = curve.enumerate_points(4, F)
        for P in points:
            self.assertTrue(curve.contains(P, F))
            self.assertTrue(curve.add(P, curve.neg(P, F), F).is_infinity)

    def test_f4_curve_round_trip(self):
        curve = catalog(4)[0].curve
        self.assertEqual(Curve.from_json(curve.to_json()), curve)
        self.assertEqual(curve.field, galois_field(4))


if __name__ == '__main__':
    unittest.main()
