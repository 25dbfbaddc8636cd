# python -m unittest discover -v
