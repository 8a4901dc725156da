from genmorse.cli import entry

entry()
