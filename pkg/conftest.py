# Root conftest.py: lets pytest find src/ and main.py from the project root.
