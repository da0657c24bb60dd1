"""CHANN11 translation with the inverted loop condition (compares against 'N')."""

from chann11_translation import serve

if __name__ == "__main__":
    serve(lambda cnt, iterations, exit_early: cnt <= iterations and exit_early == "N")
