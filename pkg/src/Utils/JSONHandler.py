import json
import os

from src.Utils.Exceptions import ParseError
from src.Utils.Settings import default_encoding


class JSONHandler:
    def __init__(self, filename, message, **decode_kwargs):
        self.filename = filename
        self.message = message
        self.decode_kwargs = decode_kwargs

    def __enter__(self):
        if not os.path.exists(self.filename):
            raise FileNotFoundError(f'JSON file {self.filename} does not exist')
        try:
            with open(self.filename, 'r', encoding=default_encoding) as stream:
                return json.load(stream, **self.decode_kwargs)
        except json.decoder.JSONDecodeError as e:
            raise ParseError(f'{self.message}: {e.msg}', e.lineno) from e

    def __exit__(self, exc_type, exc_value, exc_traceback):
        pass


def dump_json(data, indent=4):
    # Key order and float repr are fixed so repeated runs give identical bytes
    return json.dumps(data, indent=indent, sort_keys=True)


def write_json(filename, data, indent=4):
    with open(filename, 'w', encoding=default_encoding, newline='\n') as F:
        F.write(dump_json(data, indent))
        F.write('\n')
