import csv
import io
import json
from fractions import Fraction

import numpy as np

from cmlnkit.numerics.cyclotomic import Cyclotomic, format_exact_weight


def format_value(value, log10=False):
    """Rationals as `p/q` strings, doubles with 17 significant digits; log10 applies at emission only."""
    if isinstance(value, Cyclotomic):
        if not value.is_rational():
            return format_exact_weight(value)
        value = value.try_to_rational()
    if log10:
        real = float(value) if not isinstance(value, complex) else value.real
        return '{:.17g}'.format(float(np.log10(real))) if real > 0 else '-inf'
    if isinstance(value, (Fraction, int)):
        return str(Fraction(value))
    if isinstance(value, (complex, np.complexfloating)):
        value = complex(value)
        return '{:.17g}{:+.17g}j'.format(value.real, value.imag)
    return '{:.17g}'.format(float(value))


def grid_report(distribution, formulas, stats=None, log10=False, extra=None):
    report = {
        'axes': [{'formula': str(formula), 'modulus': modulus}
                 for formula, modulus in zip(formulas, distribution.shape.moduli)],
        'values': [format_value(p, log10) for p in distribution.to_list()],
        'mass': format_value(distribution.total()),
        'log10': log10
    }
    if stats is not None:
        report['oracle'] = stats.summary()
    if extra:
        report.update(extra)
    return report


def grid_rows(distribution, log10=False):
    """A dense matrix for two formulas (row = first formula's count), otherwise one row per count vector."""
    if distribution.shape.ndim == 2:
        rows, columns = distribution.shape.moduli
        return [[format_value(distribution[(i, j)], log10) for j in range(columns)] for i in range(rows)]
    return [list(point) + [format_value(p, log10)] for point, p in distribution.items()]


def to_json(report):
    return json.dumps(report, indent=2, default=str) + '\n'


def to_csv(rows, header=None):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    if header is not None:
        writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()
