import os
import random
import sys
import unittest

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.core.errors import DomainError, UnsupportedOperationError, ValidationError
from src.core.fields import (ExtField, PrimeField, ResidueFields, default_extension, galois_field,
                             minimal_polynomial, solve_artin_schreier, sqrt_ext)
from src.core.poly import Poly, first_irreducible, is_irreducible, poly_xgcd, random_irreducible


class TestPrimeField(unittest.TestCase):
    def setUp(self):
        self.F = PrimeField(5)

    def test_arithmetic(self):
        """Test basic arithmetic modulo p"""
        F = self.F
        self.assertEqual(F.add(3, 4), 2)
        self.assertEqual(F.sub(1, 3), 3)
        self.assertEqual(F.mul(3, 4), 2)
        self.assertEqual(F.neg(2), 3)
        for a in range(1, 5):
            self.assertEqual(F.mul(a, F.inv(a)), 1)

    def test_rejects_composite(self):
        with self.assertRaises(DomainError):
            PrimeField(6)

    def test_inverse_of_zero(self):
        with self.assertRaises(DomainError):
            self.F.inv(0)


class TestExtensionFields(unittest.TestCase):
    def test_registry(self):
        """Test the supported base fields and their orders"""
        for q in (2, 3, 4, 5, 7, 9):
            F = galois_field(q)
            self.assertEqual(F.order, q)
            self.assertEqual(len(list(F.elements())), q)
        with self.assertRaises(ValidationError):
            galois_field(8)

    def test_field_axioms_f9(self):
        """Test that F_9 multiplication is a group on the nonzero elements"""
        F = galois_field(9)
        nonzero = [a for a in F.elements() if a != F.zero]
        for a in nonzero:
            self.assertEqual(F.mul(a, F.inv(a)), F.one)
            self.assertEqual(F.pow(a, 8), F.one)
        for a in nonzero:
            for b in nonzero:
                self.assertEqual(F.mul(a, b), F.mul(b, a))

    def test_encode_decode(self):
        F = galois_field(4)
        codes = sorted(F.encode(a) for a in F.elements())
        self.assertEqual(codes, [0, 1, 2, 3])
        for code in range(4):
            self.assertEqual(F.encode(F.decode(code)), code)

    def test_tower_over_f4(self):
        """Test a degree-3 extension of F_4 and its Frobenius"""
        base = galois_field(4)
        K = ExtField(base, first_irreducible(base, 3))
        self.assertEqual(K.order, 64)
        self.assertEqual(K.absolute_degree, 6)
        rng = random.Random(3)
        a = K.random(rng)
        self.assertEqual(K.frobenius(a, 3), a)

    def test_reducible_modulus(self):
        F = PrimeField(2)
        with self.assertRaises(DomainError):
            ExtField(F, Poly.from_ints(F, [1, 0, 1]))

    def test_residue_fields_preset(self):
        F = PrimeField(3)
        modulus = random_irreducible(F, 5, seed=7)
        fields = ResidueFields(F, {5: modulus})
        self.assertEqual(fields.get(5).modulus, modulus)
        self.assertIs(fields.get(1), F)

    def test_residue_fields_degree_one_is_base(self):
        """The base object comes back even when a cached field of the same order exists"""
        cached = default_extension(galois_field(5), 1)
        F = PrimeField(5)
        self.assertIsNot(F, cached)
        self.assertEqual(F, cached)
        fields = ResidueFields(F)
        self.assertIs(fields.get(1), F)
        self.assertIs(ResidueFields(F, {1: None}).get(1), F)


class TestPolynomials(unittest.TestCase):
    def setUp(self):
        self.F = PrimeField(3)

    def test_division(self):
        F = self.F
        a = Poly.from_ints(F, [1, 2, 0, 1, 1])
        b = Poly.from_ints(F, [2, 1, 1])
        q, r = divmod(a, b)
        self.assertEqual(q * b + r, a)
        self.assertLess(r.degree, b.degree)

    def test_xgcd(self):
        F = self.F
        a = Poly.from_ints(F, [1, 0, 1])
        b = Poly.from_ints(F, [2, 1, 0, 1])
        g, s, t = poly_xgcd(a, b)
        self.assertEqual(s * a + t * b, g)

    def test_irreducible_counts(self):
        """Test the number of monic irreducibles of degree 2 and 3 over F_3"""
        F = self.F
        for d, expected in ((2, 3), (3, 8)):
            count = 0
            for code in range(3 ** d):
                coeffs = [(code // 3 ** i) % 3 for i in range(d)] + [1]
                if is_irreducible(Poly.from_ints(F, coeffs)):
                    count += 1
            self.assertEqual(count, expected)

    def test_random_irreducible_is_deterministic(self):
        F = self.F
        f = random_irreducible(F, 57, seed='s')
        self.assertEqual(f, random_irreducible(F, 57, seed='s'))
        self.assertEqual(f.degree, 57)
        self.assertTrue(is_irreducible(f))


class TestRootsAndMinimalPolynomials(unittest.TestCase):
    def test_sqrt_ext(self):
        """Test square roots in F_9 and in a degree-4 extension of F_3"""
        for field in (galois_field(9), ExtField(PrimeField(3), first_irreducible(PrimeField(3), 4))):
            for a in field.elements():
                r = sqrt_ext(field, field.mul(a, a))
                self.assertIsNotNone(r)
                self.assertEqual(field.mul(r, r), field.mul(a, a))

    def test_sqrt_char2(self):
        with self.assertRaises(UnsupportedOperationError):
            sqrt_ext(galois_field(4), galois_field(4).one)

    def test_artin_schreier(self):
        """Test y^2 + y = c in F_16, solvable exactly when Tr(c) = 0"""
        F2 = PrimeField(2)
        K = ExtField(F2, first_irreducible(F2, 4))
        solvable = 0
        for c in K.elements():
            y = solve_artin_schreier(K, c)
            if y is not None:
                solvable += 1
                self.assertEqual(K.add(K.mul(y, y), y), c)
        self.assertEqual(solvable, 8)

    def test_minimal_polynomial(self):
        F = PrimeField(2)
        modulus = first_irreducible(F, 5)
        K = ExtField(F, modulus)
        self.assertEqual(minimal_polynomial(K, F, K.generator), modulus)
        self.assertEqual(minimal_polynomial(K, F, K.one).degree, 1)


if __name__ == '__main__':
    unittest.main()
