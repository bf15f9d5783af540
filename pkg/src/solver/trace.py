"""
@Description: JSON-lines trace of solver stages with per-tuple projection tables
@version:
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-24 14:41:59
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-10 17:13:31
"""
import itertools
import json

import pandas as pd

from src.relations.typed import describe_row, project_row


def projection_table(instance):
    """One record per k-subset of variables: its scope, orbit names and row count."""
    sig = instance.ground.sig
    records = []
    for t in itertools.combinations(instance.vars, sig.k):
        covering = instance.covering(t)
        if not covering:
            continue
        positions = covering[0].positions(t)
        rows = {project_row(sig, row, positions) for row in covering[0].rows}
        records.append({
            'scope': ','.join(map(str, t)),
            'orbits': '|'.join(sorted(describe_row(sig, row) for row in rows)),
            'count': len(rows),
        })
    return pd.DataFrame(records, columns=['scope', 'orbits', 'count'])


def _plain(value):
    """numpy scalars from pandas tables to plain Python values."""
    return value.item() if hasattr(value, 'item') else str(value)


class TraceWriter(object):
    """Appends one JSON object per line; a None path keeps records in memory only."""

    def __init__(self, path=None):
        self.path = path
        self.records = []
        self._file = open(path, 'w') if path else None

    def record(self, stage, instance=None, **extra):
        entry = {'stage': stage, 'index': len(self.records)}
        entry.update(extra)
        if instance is not None:
            table = projection_table(instance)
            entry['trivial'] = instance.is_trivial
            entry['rows'] = instance.row_count()
            entry['projections'] = table.to_dict(orient='records')
        self.records.append(entry)
        if self._file is not None:
            self._file.write(json.dumps(entry, sort_keys=True, default=_plain) + '\n')
            self._file.flush()
        return entry

    def close(self):
        if self._file is not None:
            self._file.close()
            self._file = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
