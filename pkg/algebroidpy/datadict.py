"""
Algebroidpy Output Module
Content: DataDict class for reports
"""

import json
import os
import tempfile
import numpy as np
import pandas as pd

from os import listdir, makedirs
from os.path import getmtime, join, isdir

from .tools import AttrDict

MANIFEST_FILE = 'manifest.json'
FLOAT_FORMAT = '%.17g'


class NpEncoder(json.JSONEncoder):
    """ Adds support for numpy number formats and complex numbers to json. """
    # By Jie Yang https://stackoverflow.com/a/57915246
    def default(self, obj):
        if isinstance(obj, np.integer):
            return int(obj)
        elif isinstance(obj, np.floating):
            return float(obj)
        elif isinstance(obj, (complex, np.complexfloating)):
            return [obj.real, obj.imag]
        elif isinstance(obj, np.ndarray):
            return obj.tolist()
        elif isinstance(obj, np.bool_):
            return bool(obj)
        else:
            return super(NpEncoder, self).default(obj)


def _last_exp_id(name, path):
    """ Identifies existing report data and return highest id. """

    output_dirs = listdir(path)
    exp_dirs = [s for s in output_dirs if s.rsplit('_', 1)[0] == name]
    if exp_dirs:
        ids = [int(s.split('_')[-1]) for s in exp_dirs]
        return max(ids)
    else:
        return None


def _atomic_write(path, text):
    """ Writes a file through a temporary file in the same directory. """
    directory = os.path.dirname(path) or '.'
    fd, tmp = tempfile.mkstemp(dir=directory, suffix='.tmp')
    try:
        with os.fdopen(fd, 'w', newline='') as fp:
            fp.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def _csv_text(df):
    header = f"# manifest: {MANIFEST_FILE}\n"
    return header + df.to_csv(index=False, float_format=FLOAT_FORMAT)


def _json_text(obj):
    return json.dumps(obj, cls=NpEncoder, indent=2, sort_keys=True)


class DataDict(AttrDict):
    """ Nested dictionary for reports.
    Items can be accessed like attributes.
    Attributes can differ from the standard ones listed below.

    Attributes:
        info (dict):
            The run manifest: tool version, input hash, timing, warnings.
        table (pandas.DataFrame):
            Values of the functionals on the grid of radii.
        summary (dict):
            Scalar results and pass/fail flags.
    """

    def __repr__(self, indent=False):
        rep = ""
        if not indent:
            rep += "DataDict {"
        i = '    ' if indent else ''
        for k, v in self.items():
            rep += f"\n{i}'{k}': "
            if isinstance(v, (int, float, np.integer, np.floating)):
                rep += f"{v} {type(v)}"
            elif isinstance(v, str):
                x0 = f"(length {len(v)})"
                x = f"...' {x0}" if len(v) > 20 else "'"
                rep += f"'{v[:30]}{x} {type(v)}"
            elif isinstance(v, pd.DataFrame):
                lv = len(list(v.columns))
                rv = len(list(v.index))
                rep += f"DataFrame with {lv} " \
                       f"column{'s' if lv != 1 else ''} " \
                       f"and {rv} row{'s' if rv != 1 else ''}"
            elif isinstance(v, DataDict):
                rep += f"{v.__repr__(indent=True)}"
            elif isinstance(v, dict):
                lv = len(list(v.keys()))
                rep += f"Dictionary with {lv} key{'s' if lv != 1 else ''}"
            elif isinstance(v, list):
                lv = len(v)
                rep += f"List with {lv} entr{'ies' if lv != 1 else 'y'}"
            else:
                rep += f"Object of type {type(v)}"
        if not indent:
            rep += "\n}"
        return rep

    def _short_repr(self):
        len_ = len(self.keys())
        return f"DataDict {{{len_} entr{'y' if len_ == 1 else 'ies'}}}"

    def __eq__(self, other):
        """ Check equivalence of two DataDicts."""
        if not isinstance(other, DataDict):
            return False
        for key, item in self.items():
            if key not in other:
                return False
            if isinstance(item, pd.DataFrame):
                if not self[key].equals(other[key]):
                    return False
            elif not self[key] == other[key]:
                return False
        return True

    def __ne__(self, other):
        return not self.__eq__(other)

    # Saving and loading data ----------------------------------------------- #

    def save(self, exp_name=None, exp_id=None, path='ag_output',
             display=True):
        """ Writes data to directory `{path}/{exp_name}_{exp_id}/`.

        Tables are written as CSV with 17 significant digits and a first
        line that points to the manifest; the entry 'info' is written to
        `manifest.json`, other entries as JSON. Every file is written
        atomically.

        Arguments:
            exp_name (str, optional): Name of the report.
                If none is passed, `self.info['command']` is used.
            exp_id (int, optional): Number of the report.
                Note that passing an existing id overwrites existing data.
                If none is passed, a new id is generated.
            path (str, optional): Target directory (default 'ag_output').
            display (bool, optional): Display saving progress (default True).

        Returns:
            str: The directory the data was written to.
        """

        if not isdir(path):
            makedirs(path)

        if exp_name is None:
            if 'info' in self and 'command' in self.info:
                exp_name = self.info['command']
            else:
                exp_name = 'Unnamed'
        exp_name = exp_name.replace(" ", "_")

        if exp_id is None:
            exp_id = _last_exp_id(exp_name, path)
            exp_id = 1 if exp_id is None else exp_id + 1

        path_dir = join(path, f'{exp_name}_{exp_id}')
        if not isdir(path_dir):
            makedirs(path_dir)

        for key, output in self.items():
            if key == 'info':
                _atomic_write(join(path_dir, MANIFEST_FILE), _json_text(output))
            elif isinstance(output, pd.DataFrame):
                _atomic_write(join(path_dir, f'{key}.csv'), _csv_text(output))
            elif isinstance(output, DataDict):
                for k, o in output.items():
                    if isinstance(o, pd.DataFrame):
                        _atomic_write(join(path_dir, f'{key}_{k}.csv'),
                                      _csv_text(o))
                    else:
                        _atomic_write(join(path_dir, f'{key}_{k}.json'),
                                      _json_text(o))
            else:  # Use JSON for other object types
                try:
                    text = _json_text(output)
                except TypeError as e:
                    print(f"Warning: Object '{key}' could not be saved. "
                          f"(Reason: {e})")
                    continue
                _atomic_write(join(path_dir, f'{key}.json'), text)

        if display:
            print(f"Data saved to {path_dir}")
        return path_dir

    def _load(self, exp_name=None, exp_id=None,
              path='ag_output', display=True):

        def load_file(path, file):
            if display:
                print(f'Loading {file} - ', end='')
            ext = file.split(".")[-1]
            if ext == 'csv':
                obj = pd.read_csv(join(path, file), comment='#')
            elif ext == 'json':
                with open(join(path, file), 'r') as fp:
                    obj = json.load(fp)
                if isinstance(obj, dict):
                    obj = AttrDict(obj)
            else:
                raise ValueError(f"File type '{ext}' not supported")
            if display:
                print('Successful')
            return obj

        # Prepare for loading
        if exp_name is None:
            # Choose latest modified report
            exp_names = listdir(path)
            paths = [join(path, d) for d in exp_names]
            latest_exp = exp_names[paths.index(max(paths, key=getmtime))]
            exp_name = latest_exp.rsplit('_', 1)[0]

        exp_name = exp_name.replace(" ", "_")
        if exp_id is None:
            exp_id = _last_exp_id(exp_name, path)
            if exp_id is None:
                raise FileNotFoundError(f"No report found with "
                                        f"name '{exp_name}' in path '{path}'")
        path = join(path, f'{exp_name}_{exp_id}')
        if display:
            print(f'Loading from directory {path}')

        for file in sorted(listdir(path)):
            ext = file.split(".")[-1]
            key = file[:-(len(ext) + 1)]
            if file == MANIFEST_FILE:
                key = 'info'
            self[key] = load_file(path, file)
        return self

    @classmethod
    def load(cls, exp_name=None, exp_id=None, path='ag_output', display=True):
        """ Reads data from directory `{path}/{exp_name}_{exp_id}/`.

            Arguments:
                exp_name (str, optional): Report name.
                    If none is passed, the most recent report is chosen.
                exp_id (int, optional): Id number of the report.
                    If none is passed, the highest available id used.
                path (str, optional): Target directory (default 'ag_output').
                display (bool, optional): Display loading progress
                    (default True).

            Returns:
                DataDict: The loaded data.
        """
        return cls()._load(exp_name, exp_id, path, display)
