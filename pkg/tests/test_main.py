import io
import json
import os
import sys
import tempfile
import unittest
from contextlib import redirect_stdout
from unittest.mock import patch

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import main as cli
from main import main
from src.core.errors import InternalConsistencyError


def run(*argv):
    out = io.StringIO()
    with redirect_stdout(out):
        code = main(list(argv))
    return code, out.getvalue()


class TestQueries(unittest.TestCase):
    def test_logstar(self):
        code, out = run('logstar', '--q', '2', '--n', '163')
        self.assertEqual(code, 0)
        data = json.loads(out)
        self.assertEqual(data['log_star'], 4)
        self.assertEqual(data['bound'], 256)

    def test_bound(self):
        code, out = run('bound', '--q', '3', '--n', '57', '--curve', 'y^2 + 2x^3 + 2x^2 + 1 = 0')
        self.assertEqual(code, 0)
        data = json.loads(out)
        self.assertEqual(data['bound'], 234)
        self.assertEqual(data['dmax'], 5)
        self.assertTrue(data['place_exists'])

    def test_catalog(self):
        code, out = run('catalog', '--q', '3')
        self.assertEqual(code, 0)
        curves = json.loads(out)['curves']
        self.assertEqual([c['index'] for c in curves], list(range(len(curves))))

    def test_places(self):
        code, out = run('places', '--q', '2', '--curve', 'y^2 + y + x^3 = 0', '--dmax', '4', '--enumerate')
        self.assertEqual(code, 0)
        self.assertTrue(json.loads(out)['agree'])

    def test_text_format(self):
        code, out = run('--format', 'text', 'logstar', '--q', '3', '--n', '57')
        self.assertEqual(code, 0)
        self.assertIn('bound: 216', out)


class TestErrors(unittest.TestCase):
    def test_unsupported_q(self):
        code, out = run('bound', '--q', '8', '--n', '5')
        self.assertEqual(code, 2)
        self.assertEqual(json.loads(out)['error'], 'validation')

    def test_catalog_outside_range(self):
        code, _ = run('catalog', '--q', '11')
        self.assertEqual(code, 2)

    def test_invalid_shape(self):
        """Test a place count above what the curve offers"""
        code, out = run('build', '--q', '2', '--n', '7', '--curve', 'y^2 + y + x^3 = 0',
                        '--N', '9', '--U', '2')
        self.assertEqual(code, 2)

    def test_missing_config(self):
        code, _ = run('--config', '/nonexistent/config.json', 'logstar', '--q', '2', '--n', '5')
        self.assertEqual(code, 2)

    def test_unexpected_library_error(self):
        """Any other library error exits with the construction code"""
        def broken(args):
            raise InternalConsistencyError("divisor degree drifted")

        with patch.dict(cli.COMMANDS, {'logstar': broken}):
            code, out = run('logstar', '--q', '2', '--n', '5')
        self.assertEqual(code, 3)
        data = json.loads(out)
        self.assertEqual(data['error'], 'construction')
        self.assertIn('drifted', data['message'])


class TestBuildFlow(unittest.TestCase):
    def test_build_verify_emit(self):
        with tempfile.TemporaryDirectory() as tmp:
            bundle = os.path.join(tmp, 'f2_7.json')
            slp = os.path.join(tmp, 'f2_7.slp')
            code, out = run('build', '--q', '2', '--n', '7', '--seed', '5', '--out', bundle, '--slp', slp)
            self.assertEqual(code, 0)
            result = json.loads(out)
            self.assertTrue(result['verification']['passed'])
            self.assertTrue(result['conditions']['passed'])
            self.assertTrue(os.path.exists(slp))

            code, out = run('verify', '--bundle', bundle)
            self.assertEqual(code, 0)
            self.assertEqual(json.loads(out)['pairs_checked'], 49)

            code, out = run('--format', 'slp', 'emit', '--bundle', bundle)
            self.assertEqual(code, 0)
            self.assertTrue(out.startswith('# slp q=2 n=7'))

    def test_tampered_bundle(self):
        """A corrupted bundle exits with the verification code"""
        with tempfile.TemporaryDirectory() as tmp:
            bundle = os.path.join(tmp, 'f3_4.json')
            code, _ = run('build', '--q', '3', '--n', '4', '--out', bundle)
            self.assertEqual(code, 0)
            with open(bundle, 'r', encoding='utf-8') as f:
                data = json.load(f)
            for product in data['products']:
                product['w'] = [0] * len(product['w'])
            with open(bundle, 'w', encoding='utf-8') as f:
                json.dump(data, f)
            code, out = run('verify', '--bundle', bundle)
            self.assertEqual(code, 4)
            self.assertEqual(json.loads(out)['error'], 'verification')


if __name__ == '__main__':
    unittest.main()
