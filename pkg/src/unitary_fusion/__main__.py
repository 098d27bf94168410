from .cli_io.cli import main

main()
