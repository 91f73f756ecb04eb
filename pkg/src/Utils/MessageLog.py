import sys


def null_log(msg):
    pass


class MessageLog:
    """
    Console counterpart of the GUI log pane: ``log`` appends a line and
    ``updateLog`` overwrites the most recent one.
    """
    __slots__ = ("stream", "enabled", "__line_open")

    def __init__(self, stream=None, enabled=True):
        self.stream = sys.stderr if stream is None else stream
        self.enabled = enabled
        self.__line_open = False

    def __is_tty(self):
        isatty = getattr(self.stream, "isatty", None)
        return isatty is not None and isatty()

    def log(self, msg):
        if not self.enabled:
            return
        if self.__line_open:
            self.stream.write("\n")
        self.stream.write(msg)
        self.__line_open = True
        if not self.__is_tty():
            self.stream.write("\n")
            self.__line_open = False
        self.stream.flush()

    def updateLog(self, msg):
        if not self.enabled:
            return
        if self.__line_open and self.__is_tty():
            self.stream.write("\r\033[K" + msg)
            self.stream.flush()
        else:
            self.log(msg)

    def close(self):
        if self.__line_open:
            self.stream.write("\n")
            self.stream.flush()
            self.__line_open = False
