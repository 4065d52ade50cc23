import copy
import os

import yaml

from cmlnkit.common.constant import def_logger, MAX_ATOMS_ENV_KEY, DEFAULT_MAX_ENUMERATED_ATOMS, \
    DEFAULT_MAX_GRID_POINTS, DEFAULT_MAX_LP_POINTS, DEFAULT_FLOAT_TOLERANCE
from cmlnkit.common.file_util import check_if_exists

logger = def_logger.getChild(__name__)

DEFAULT_ENGINE_CONFIG = {
    'engine': {
        'type': 'auto'
    },
    'limits': {
        'max_enumerated_atoms': DEFAULT_MAX_ENUMERATED_ATOMS,
        'max_grid_points': DEFAULT_MAX_GRID_POINTS,
        'max_lp_points': DEFAULT_MAX_LP_POINTS
    },
    'numerics': {
        'float_tolerance': DEFAULT_FLOAT_TOLERANCE
    },
    'log': {
        'file': None
    }
}


def yaml_join(loader, node):
    """`!join [a, b, ...]` concatenates the items as strings."""
    return ''.join(str(item) for item in loader.construct_sequence(node))


def yaml_pathjoin(loader, node):
    """`!pathjoin [dir, ..., file]` joins the items into a path and expands `~`."""
    parts = [str(item) for item in loader.construct_sequence(node)]
    return os.path.expanduser(os.path.join(*parts))


YAML_CONSTRUCTOR_DICT = {
    '!join': yaml_join,
    '!pathjoin': yaml_pathjoin
}


def load_yaml_file(yaml_file_path, custom_mode=True):
    if custom_mode:
        for tag, constructor in YAML_CONSTRUCTOR_DICT.items():
            yaml.add_constructor(tag, constructor, Loader=yaml.FullLoader)
    with open(yaml_file_path, 'r') as fp:
        return yaml.load(fp, Loader=yaml.FullLoader)


def merge_config(base_config, override_config):
    merged_config = copy.deepcopy(base_config)
    for key, value in (override_config or dict()).items():
        if isinstance(value, dict) and isinstance(merged_config.get(key, None), dict):
            merged_config[key] = merge_config(merged_config[key], value)
        else:
            merged_config[key] = value
    return merged_config


def load_engine_config(yaml_file_path=None):
    config = copy.deepcopy(DEFAULT_ENGINE_CONFIG)
    if yaml_file_path is not None:
        if not check_if_exists(yaml_file_path):
            raise FileNotFoundError('config file `{}` is not found'.format(yaml_file_path))
        config = merge_config(config, load_yaml_file(yaml_file_path))

    env_max_atoms = os.environ.get(MAX_ATOMS_ENV_KEY, None)
    if env_max_atoms:
        try:
            config['limits']['max_enumerated_atoms'] = int(env_max_atoms)
        except ValueError:
            raise ValueError('{} `{}` is not expected'.format(MAX_ATOMS_ENV_KEY, env_max_atoms))
        logger.info('Enumeration cap overridden by {}: {}'.format(MAX_ATOMS_ENV_KEY, env_max_atoms))
    return config


def get_limit(config, key):
    limits_config = DEFAULT_ENGINE_CONFIG['limits'] if config is None else config.get('limits', dict())
    return limits_config.get(key, DEFAULT_ENGINE_CONFIG['limits'][key])


def get_float_tolerance(config=None):
    numerics_config = dict() if config is None else config.get('numerics', dict())
    return numerics_config.get('float_tolerance', DEFAULT_FLOAT_TOLERANCE)


def get_max_enumerated_atoms(config=None):
    if config is None:
        env_max_atoms = os.environ.get(MAX_ATOMS_ENV_KEY, None)
        if env_max_atoms:
            return int(env_max_atoms)
    return get_limit(config, 'max_enumerated_atoms')


def get_log_file_path(config=None):
    log_config = dict() if config is None else config.get('log', None) or dict()
    return log_config.get('file', None)
