import copy
import json
import logging
import os
import sys
import tempfile
import unittest

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from config.config import BUILD_CONFIG, COST_CONFIG
from src.core.costs import CostTable
from src.utils.config import ConfigError, ConfigLoader, deep_merge
from src.utils.logger import setup_logger


class TestConfigLoader(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.saved = copy.deepcopy(BUILD_CONFIG), copy.deepcopy(COST_CONFIG)

    def tearDown(self):
        self.tmp.cleanup()
        BUILD_CONFIG.clear()
        BUILD_CONFIG.update(self.saved[0])
        COST_CONFIG.clear()
        COST_CONFIG.update(self.saved[1])

    def write(self, data):
        path = os.path.join(self.tmp.name, 'override.json')
        with open(path, 'w', encoding='utf-8') as f:
            f.write(data if isinstance(data, str) else json.dumps(data))
        return path

    def test_defaults(self):
        config = ConfigLoader().load_config()
        self.assertEqual(config['build']['max_build_retries'], BUILD_CONFIG['max_build_retries'])
        self.assertEqual(config['cli']['default_format'], 'json')

    def test_override_and_apply(self):
        path = self.write({'build': {'max_build_retries': 3}, 'cost': {'m_hat': [1, 3, 6]}})
        loader = ConfigLoader(path)
        config = loader.load_config()
        self.assertEqual(config['build']['max_build_retries'], 3)
        self.assertEqual(config['build']['max_divisor_attempts'], BUILD_CONFIG['max_divisor_attempts'])
        loader.apply()
        self.assertEqual(BUILD_CONFIG['max_build_retries'], 3)
        self.assertEqual(CostTable.for_q(2).max_order, 3)

    def test_get_value(self):
        loader = ConfigLoader(self.write({'logging': {'level': 'DEBUG'}}))
        self.assertEqual(loader.get_value('logging', 'level'), 'DEBUG')
        self.assertEqual(loader.get_value('logging', 'missing', 7), 7)

    def test_invalid_values(self):
        bad = [
            {'build': {'max_build_retries': 0}},
            {'cost': {'m_hat': [1, 3, 2]}},
            {'cli': {'default_format': 'yaml'}},
            {'plugins': {}},
            {'build': 'fast'},
        ]
        for data in bad:
            with self.assertRaises(ConfigError, msg=data):
                ConfigLoader(self.write(data)).load_config()

    def test_unreadable_files(self):
        with self.assertRaises(ConfigError):
            ConfigLoader(os.path.join(self.tmp.name, 'absent.json')).load_config()
        with self.assertRaises(ConfigError):
            ConfigLoader(self.write('{"build": ')).load_config()
        with self.assertRaises(ConfigError):
            ConfigLoader(self.write('[1, 2]')).load_config()

    def test_save_config(self):
        path = os.path.join(self.tmp.name, 'nested', 'saved.json')
        loader = ConfigLoader()
        loader.save_config(path, {'build': {'max_divisor_attempts': 5}})
        self.assertEqual(ConfigLoader(path).get_value('build', 'max_divisor_attempts'), 5)
        with self.assertRaises(ConfigError):
            loader.save_config(path, {'build': {'max_divisor_attempts': -1}})

    def test_deep_merge(self):
        base = {'a': {'b': 1, 'c': 2}, 'd': 3}
        merged = deep_merge(base, {'a': {'c': 5}})
        self.assertEqual(merged, {'a': {'b': 1, 'c': 5}, 'd': 3})
        self.assertEqual(base['a']['c'], 2)


class TestLogger(unittest.TestCase):
    def test_level_and_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            log = setup_logger('src.tests.logfile', 'debug', log_dir=tmp)
            self.assertEqual(log.logger.level, logging.DEBUG)
            log.info('placed')
            for handler in log.logger.handlers:
                handler.flush()
            files = os.listdir(tmp)
            self.assertEqual(len(files), 1)
            self.assertTrue(files[0].startswith('chudnovsky_'))
            for handler in list(log.logger.handlers):
                handler.close()
                log.logger.removeHandler(handler)

    def test_handlers_not_duplicated(self):
        first = setup_logger('src.tests.once')
        second = setup_logger('src.tests.once')
        self.assertIs(first.logger, second.logger)
        self.assertEqual(len(second.logger.handlers), 1)


if __name__ == '__main__':
    unittest.main()
