# Command-line package (entry point in app.cli.main)
