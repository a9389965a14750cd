import os
import sys
import unittest

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.core.costs import (CostTable, cost, default_max_degree, log_star, log_star_bound, log_star_ranges,
                            place_exists)
from src.core.errors import DomainError


class TestCostTable(unittest.TestCase):
    def test_tabled_rows(self):
        """Test the mu_2, mu_3 and M_hat rows for sizes 1..8"""
        self.assertEqual(list(CostTable.for_q(2).mu[:8]), [1, 3, 6, 9, 13, 15, 22, 24])
        self.assertEqual(list(CostTable.for_q(3).mu[:8]), [1, 3, 6, 9, 12, 15, 19, 21])
        self.assertEqual(list(CostTable.for_q(2).m_hat), [1, 3, 5, 8, 11, 15, 19, 24])

    def test_products(self):
        self.assertEqual(cost(2, 4), 9)
        self.assertEqual(cost(3, 1, 3), 5)
        self.assertEqual(cost(2, 2, 2), 9)
        self.assertEqual(cost(3, 5), 12)

    def test_explicit_rows(self):
        """Test that q without a tabled row falls back to the explicit algorithms"""
        table = CostTable.for_q(5)
        self.assertEqual(list(table.mu), [1, 3, 6, 9])
        with self.assertRaises(DomainError):
            table.cost(5)

    def test_out_of_range(self):
        with self.assertRaises(DomainError):
            cost(2, 11)
        with self.assertRaises(DomainError):
            cost(2, 1, 9)

    def test_overrides(self):
        table = CostTable.for_q(2, {'m_hat': [1, 3, 6]})
        self.assertEqual(table.cost(1, 3), 6)
        self.assertEqual(table.max_order, 3)


class TestLogStar(unittest.TestCase):
    def test_values(self):
        cases = {1: 0, 2: 1, 3: 2, 4: 2, 5: 3, 16: 3, 17: 4, 65536: 4, 65537: 5, 2 ** 100: 5}
        for n, expected in cases.items():
            self.assertEqual(log_star(2, n), expected, n)

    def test_base_three(self):
        self.assertEqual(log_star(3, 3), 1)
        self.assertEqual(log_star(3, 27), 2)
        self.assertEqual(log_star(3, 28), 3)

    def test_ranges(self):
        """Test the (2q)^(log* n) bounds 4, 16, 64, 256, 1024 for q = 2"""
        rows = log_star_ranges(2)
        self.assertEqual([r['bound'] for r in rows], [4, 16, 64, 256, 1024])
        self.assertEqual([(r['low'], r['high']) for r in rows[:4]], [(1, 2), (2, 4), (4, 16), (16, 65536)])
        self.assertEqual(rows[4]['low'], 65536)
        self.assertEqual(rows[4]['high_bits'], 65537)

    def test_bound(self):
        self.assertEqual(log_star_bound(2, 163), 256)
        self.assertEqual(log_star_bound(3, 57), 216)

    def test_negative(self):
        with self.assertRaises(DomainError):
            log_star(2, -1)


class TestPlaceExistence(unittest.TestCase):
    def test_thresholds(self):
        self.assertFalse(place_exists(2, 6))
        self.assertTrue(place_exists(2, 7))
        self.assertFalse(place_exists(3, 3))
        self.assertTrue(place_exists(3, 4))
        self.assertFalse(place_exists(4, 2))
        self.assertTrue(place_exists(4, 3))
        self.assertTrue(place_exists(5, 3))

    def test_default_max_degree(self):
        """Test the place degrees searched for the tabled field sizes"""
        expected = {
            (2, 163): 8, (2, 233): 9, (2, 283): 9, (2, 409): 10, (2, 571): 10,
            (3, 57): 5, (3, 97): 5, (3, 150): 5, (3, 200): 6, (3, 400): 6,
        }
        for (q, n), d in expected.items():
            self.assertEqual(default_max_degree(q, n), d, (q, n))


if __name__ == '__main__':
    unittest.main()
