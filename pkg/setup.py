#!/usr/bin/env python3
"""
Environment checker for the PBW degeneration toolkit
Verifies installed package versions, the PBW_* settings, the Hall polynomial
store and one small computation from each layer.
"""

import os
import re
import sys
from importlib import metadata

# (import name, distribution, accepted versions, requirement shown to the user)
REQUIRED_PACKAGES = [
    ('dotenv', 'python-dotenv', lambda v: True, 'python-dotenv'),
    ('sqlalchemy', 'sqlalchemy', lambda v: v >= (2, 0), 'sqlalchemy>=2.0'),
    ('numpy', 'numpy', lambda v: v[:2] == (1, 26), 'numpy==1.26.4'),
    ('pandas', 'pandas', lambda v: True, 'pandas'),
]

POSITIVE_SETTINGS = {
    'PBW_MAX_RANK': '8',
    'PBW_MAX_TOTAL_DIM': '6',
    'PBW_MAX_DEGREE_BOUND': '6',
    'PBW_MAX_MODULE_DIM': '3000',
    'PBW_MAX_MODULE_RANK': '4',
    'PBW_MAX_HEIGHT': '3',
    'PBW_VERIFY_WORKERS': '1',
}

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


def version_tuple(text):
    """'1.26.4' -> (1, 26, 4); stops at the first piece without a leading number"""
    parts = []
    for piece in text.split('.'):
        match = re.match(r'\d+', piece)
        if not match:
            break
        parts.append(int(match.group()))
    return tuple(parts)


def check_python_version():
    """Python 3.9 or newer"""
    if sys.version_info < (3, 9):
        print(f"❌ Python 3.9 or higher is required, found {sys.version.split()[0]}")
        return False
    print(f"✅ Python version: {sys.version.split()[0]}")
    return True


def check_packages():
    """Every requirement importable and inside its pinned range"""
    problems = []
    for module, dist, accepts, requirement in REQUIRED_PACKAGES:
        try:
            __import__(module)
            installed = metadata.version(dist)
        except (ImportError, metadata.PackageNotFoundError):
            print(f"❌ {requirement} is not installed")
            problems.append(requirement)
            continue
        if accepts(version_tuple(installed)):
            print(f"✅ {dist} {installed}")
        else:
            print(f"❌ {dist} {installed} does not satisfy {requirement}")
            problems.append(requirement)

    if problems:
        print(f"\n⚠️  Install with: pip install {' '.join(repr(p) for p in problems)}")
        return False
    return True


def check_settings():
    """PBW_* values parse; the env file is optional"""
    from dotenv import load_dotenv

    if os.path.exists('.env'):
        load_dotenv()
        print("✅ .env file loaded")
    else:
        print("⚠️  no .env file, built-in defaults apply (see .env.example)")

    ok = True
    for var, default in POSITIVE_SETTINGS.items():
        value = os.getenv(var, default)
        if value.strip().isdigit() and int(value) >= 1:
            print(f"✅ {var} = {value}")
        else:
            print(f"❌ {var} must be a positive integer, got {value!r}")
            ok = False

    primes = os.getenv('PBW_PRIMES', '2,3,5,7,11,13,17,19')
    try:
        from hall_algebra import check_field
        values = [int(p) for p in primes.split(',')]
        for p in values:
            check_field(p)
        if len(values) < 2:
            raise ValueError("interpolation needs at least two primes")
        print(f"✅ PBW_PRIMES = {primes}")
    except Exception as e:
        print(f"❌ PBW_PRIMES is invalid: {e}")
        ok = False

    level = os.getenv('PBW_LOG_LEVEL', 'WARNING').upper()
    if level in LOG_LEVELS:
        print(f"✅ PBW_LOG_LEVEL = {level}")
    else:
        print(f"❌ PBW_LOG_LEVEL {level!r} is not one of {', '.join(LOG_LEVELS)}")
        ok = False
    return ok


def check_store():
    """Open the Hall polynomial store at HALL_DATABASE_URL"""
    try:
        from hall_store import init_store
        store = init_store()
        print(f"✅ Hall polynomial store at {store.url} ({sum(store.stats().values())} cached polynomials)")
        return True
    except Exception as e:
        print(f"❌ Error opening the Hall polynomial store: {e}")
        return False


def check_smoke():
    """A few known values from the polytope, quiver and Hall layers"""
    try:
        from fflv_polytope import lattice_points
        from hall_algebra import commutation_identity_check
        from quiver import WeightFunction, classify_coefficients, decompose_weight_function
        from root_system import weyl_dim

        results = {
            'lattice points of (1,1)': len(lattice_points((1, 1))) == weyl_dim((1, 1)) == 8,
            'mu0 is admissible-strong': classify_coefficients(
                decompose_weight_function(WeightFunction.mu0(3)), 3) == 'admissible-strong',
            'rank three commutation identity': commutation_identity_check(3).holds,
        }
    except Exception as e:
        print(f"❌ Computation failed: {e}")
        return False

    for name, passed in results.items():
        print(f"{'✅' if passed else '❌'} {name}")
    return all(results.values())


CHECKS = [
    ("Python Version", check_python_version),
    ("Required Packages", check_packages),
    ("Settings", check_settings),
    ("Hall Polynomial Store", check_store),
    ("Sample Computations", check_smoke),
]


def main():
    print("=" * 60)
    print("PBW degeneration toolkit - environment check")
    print("=" * 60)

    failed = []
    for check_name, check_func in CHECKS:
        print(f"\n📋 {check_name}")
        if not check_func():
            failed.append(check_name)
            # the later checks import the packages
            if check_func is check_packages:
                break

    print("\n" + "=" * 60)
    if not failed:
        print("✅ Environment ready. Try:")
        print("   python cli.py verify all --n 3")
    else:
        print(f"❌ Failed: {', '.join(failed)}")
        print("   pip install -r requirements.txt, then fix the values reported above in .env")
    print("=" * 60)
    return 0 if not failed else 1


if __name__ == '__main__':
    sys.exit(main())
