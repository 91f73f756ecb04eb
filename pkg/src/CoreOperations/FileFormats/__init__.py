from src.Utils.Settings import default_encoding


def read_text(path):
    with open(path, 'r', encoding=default_encoding) as F:
        return F.read()


def write_text(path, text):
    with open(path, 'w', encoding=default_encoding, newline='\n') as F:
        F.write(text)


def content_lines(text):
    """Yields (line number, stripped line) for lines that hold more than a comment."""
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if line:
            yield lineno, line
