from fractions import Fraction

from cmlnkit.common.constant import def_logger
from cmlnkit.common.errors import SizeLimitError
from cmlnkit.common.yaml_util import get_limit
from cmlnkit.polytope.lp import in_convex_hull

logger = def_logger.getChild(__name__)
HULL_FUNC_DICT = dict()


def register_hull_func(func=None, *, key=None):
    def _register_hull_func(func):
        HULL_FUNC_DICT[func.__name__ if key is None else key] = func
        return func

    if callable(func):
        return _register_hull_func(func)
    return _register_hull_func


def get_hull_func(strategy):
    if strategy not in HULL_FUNC_DICT:
        raise ValueError('hull strategy `{}` is not expected'.format(strategy))
    return HULL_FUNC_DICT[strategy]


def to_rational_point(point):
    return tuple(Fraction(c) for c in point)


class Polytope(object):
    def __init__(self, dimension, vertices, all_points):
        self.dimension = dimension
        self.vertices = list(vertices)
        self.all_points = list(all_points)

    def contains(self, point):
        point = to_rational_point(point)
        if len(point) != self.dimension:
            raise ValueError('point `{}` does not have dimension {}'.format(point, self.dimension))
        return in_convex_hull(point, self.vertices)

    def __repr__(self):
        return 'Polytope(dim={}, vertices=[{}])'.format(
            self.dimension, ', '.join('({})'.format(', '.join(str(c) for c in v)) for v in self.vertices))


def cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@register_hull_func(key='monotone_chain')
def convex_hull_2d(points):
    """Extreme points in counter-clockwise order starting from the lexicographically smallest one."""
    all_points = [to_rational_point(p) for p in points]
    unique_points = sorted(set(all_points))
    if any(len(p) != 2 for p in unique_points):
        raise ValueError('monotone chain expects 2-dimensional points')
    if len(unique_points) <= 2:
        return Polytope(2, unique_points, all_points)

    lower = list()
    for p in unique_points:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)

    upper = list()
    for p in reversed(unique_points):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return Polytope(2, lower[:-1] + upper[:-1], all_points)


@register_hull_func(key='lp_filter')
def extreme_points(points, max_points=None):
    """Keeps each point that is not a convex combination of the other points."""
    all_points = [to_rational_point(p) for p in points]
    unique_points = sorted(set(all_points))
    max_points = get_limit(None, 'max_lp_points') if max_points is None else max_points
    if len(unique_points) > max_points:
        raise SizeLimitError('{} points exceed the LP budget of {}'.format(len(unique_points), max_points),
                             required=len(unique_points), limit=max_points)

    dimension = len(unique_points[0]) if unique_points else 0
    vertices = [p for i, p in enumerate(unique_points)
                if not in_convex_hull(p, unique_points[:i] + unique_points[i + 1:])]
    logger.debug('{} of {} points are extreme'.format(len(vertices), len(unique_points)))
    return Polytope(dimension, vertices, all_points)


def build_polytope(points, strategy=None, dimension=None, config=None):
    points = list(points)
    if dimension is None:
        dimension = len(points[0]) if points else 0
    if strategy is None:
        strategy = 'monotone_chain' if dimension == 2 else 'lp_filter'
    hull_func = get_hull_func(strategy)
    if strategy == 'lp_filter':
        polytope = hull_func(points, max_points=get_limit(config, 'max_lp_points'))
    else:
        polytope = hull_func(points)
    polytope.dimension = dimension
    return polytope
