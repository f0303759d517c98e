"""
Result files: CSV tables and JSON summaries stamped with the
software version, config hash and seed.
"""
import csv
import hashlib
import json
import os

import numpy as np

from ..info import __version__


def config_hash(value):
    """
    sha256 of the canonical JSON form, first 16 hex digits.
    """
    text = json.dumps(value, sort_keys=True, default=_jsonable)
    return hashlib.sha256(text.encode('utf-8')).hexdigest()[:16]


def format_value(value):
    """
    Floats with 17 significant digits, everything else as str.
    """
    if isinstance(value, (float, np.floating)):
        return '%.17g' % value
    if isinstance(value, (np.integer,)):
        return str(int(value))
    return str(value)


def stamp(chash, seed):
    return {'version': __version__, 'config_hash': chash, 'seed': seed}


def write_csv(path, header, rows, chash, seed):
    """
    Write a CSV with LF line endings, preceded by a '#' comment line
    carrying version, config hash and seed.
    """
    dirname = os.path.dirname(path)
    if dirname:
        os.makedirs(dirname, exist_ok=True)
    with open(path, 'w', newline='') as f:
        f.write('# hmmfdr %s config_hash=%s seed=%s\n' % (__version__, chash, seed))
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(v) for v in row])
    return path


def _jsonable(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    raise TypeError('cannot serialise %r' % (value,))


def write_json(path, value, chash, seed):
    dirname = os.path.dirname(path)
    if dirname:
        os.makedirs(dirname, exist_ok=True)
    value = dict(value)
    value.update(stamp(chash, seed))
    with open(path, 'w', newline='') as f:
        json.dump(value, f, indent=2, sort_keys=True, default=_jsonable,
                  allow_nan=True)
        f.write('\n')
    return path


def read_csv(path):
    """
    Header and rows of a file written by `write_csv`, skipping
    comment lines.
    """
    with open(path, newline='') as f:
        lines = [line for line in f if not line.startswith('#')]
    reader = csv.reader(lines)
    header = next(reader)
    return header, [row for row in reader]
