"""Commands of the isoruled command line, discovered by :class:`~isoruled.command.CommandRunner`."""
