import itertools
import os
import random
import sys
import unittest

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.core.errors import DomainError
from src.core.fields import ExtField, PrimeField, default_extension, galois_field
from src.core.inner import (convolution_algorithm, field_algorithm, inner_algorithm, reference_product,
                            truncated_algorithm)
from src.core.poly import random_irreducible


def convolve(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


class TestTruncatedAlgorithms(unittest.TestCase):
    def setUp(self):
        self.F = PrimeField(3)

    def test_order_three_reconstruction(self):
        """Test C1 = m1, C2 = m4 - m1 - m2, C3 = m5 - m3 - m1 + m2 on all of F_3^3 x F_3^3"""
        algorithm = truncated_algorithm(self.F, 3)
        self.assertEqual(algorithm.rank, 5)
        self.assertEqual(algorithm.reconstruction.tolist(),
                         [[1, 0, 0, 0, 0], [2, 2, 0, 1, 0], [2, 1, 2, 0, 1]])
        for a in itertools.product(range(3), repeat=3):
            for b in itertools.product(range(3), repeat=3):
                self.assertEqual(algorithm.apply(a, b), convolve(a, b, 3)[:3])

    def test_ranks(self):
        for order, rank in ((1, 1), (2, 3), (3, 5)):
            self.assertEqual(truncated_algorithm(self.F, order).rank, rank)

    def test_unsupported_order(self):
        with self.assertRaises(DomainError):
            truncated_algorithm(self.F, 4)


class TestConvolutions(unittest.TestCase):
    def test_against_brute_force(self):
        """Test the 3-, 6- and 9-product convolutions over F_2 and F_3"""
        rng = random.Random(1)
        for p in (2, 3):
            F = PrimeField(p)
            for k, rank in ((2, 3), (3, 6), (4, 9)):
                algorithm = convolution_algorithm(F, k)
                self.assertEqual(algorithm.rank, rank)
                for _ in range(100):
                    a = [rng.randrange(p) for _ in range(k)]
                    b = [rng.randrange(p) for _ in range(k)]
                    self.assertEqual(algorithm.apply(a, b), convolve(a, b, p))

    def test_over_f4(self):
        F = galois_field(4)
        algorithm = convolution_algorithm(F, 3)
        elements = list(F.elements())
        rng = random.Random(2)
        for _ in range(50):
            a = [rng.choice(elements) for _ in range(3)]
            b = [rng.choice(elements) for _ in range(3)]
            expected = [F.zero] * 5
            for i in range(3):
                for j in range(3):
                    expected[i + j] = F.add(expected[i + j], F.mul(a[i], b[j]))
            got = algorithm.apply([F.encode(x) for x in a], [F.encode(x) for x in b])
            self.assertEqual(got, [F.encode(x) for x in expected])


class TestFieldAlgorithms(unittest.TestCase):
    def test_residue_multiplication(self):
        """Test mu(d) products realize multiplication in F_{q^d}"""
        rng = random.Random(3)
        for q in (2, 3, 4, 5):
            F = galois_field(q)
            for d in (2, 3, 4):
                if q ** d > 1000:
                    continue
                residue = default_extension(F, d)
                algorithm = field_algorithm(F, d, residue)
                for _ in range(30):
                    x, y = residue.random(rng), residue.random(rng)
                    a = [F.encode(c) for c in x]
                    b = [F.encode(c) for c in y]
                    self.assertEqual(algorithm.apply(a, b), [F.encode(c) for c in residue.mul(x, y)])

    def test_composite_jets(self):
        """Test order-u jets over degree-d residue fields against direct products"""
        rng = random.Random(4)
        F = PrimeField(3)
        for d, u, rank in ((2, 2, 9), (2, 3, 15), (3, 2, 18)):
            residue = ExtField(F, random_irreducible(F, d, seed=d))
            algorithm = inner_algorithm(F, d, u, residue)
            self.assertEqual(algorithm.rank, rank)
            for _ in range(40):
                a = [rng.randrange(3) for _ in range(d * u)]
                b = [rng.randrange(3) for _ in range(d * u)]
                self.assertEqual(algorithm.apply(a, b), reference_product(F, residue, d, u, a, b))

    def test_wrong_residue_degree(self):
        F = PrimeField(2)
        with self.assertRaises(DomainError):
            field_algorithm(F, 3, default_extension(F, 2))

    def test_json(self):
        data = inner_algorithm(PrimeField(2), 2, 1).to_json()
        self.assertEqual(data['kind'], 'field')
        self.assertEqual(data['rank'], 3)


if __name__ == '__main__':
    unittest.main()
