from texsynth.cli import cli

if __name__ == '__main__':
    texsynth = cli()
