import os
from pathlib import Path


def check_if_exists(file_path):
    return file_path is not None and os.path.exists(file_path)


def make_parent_dirs(file_path):
    Path(file_path).parent.mkdir(parents=True, exist_ok=True)


def read_text(file_path):
    with open(file_path, 'r') as fp:
        return fp.read()


def write_text(text, file_path):
    make_parent_dirs(file_path)
    with open(file_path, 'w') as fp:
        fp.write(text)
