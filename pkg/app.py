"""Command-line entrypoint.

Keeps a tiny, stable `app.py` at repo root; the real application lives in
`core/app_main.py`. `python app.py verify all` and `python -m core.app_main`
are equivalent.
"""

from core.app_main import main

if __name__ == "__main__":
    main()
