#!/usr/bin/env python3
"""Individual Mittag-Leffler reference points used by the unit tests.

    python3 tests/oracle/ml_oracle_extra.py > tests/data/ml_oracle_extra.txt
"""
import sys

import mpmath as mp

from ml_oracle import integral, series, to_double_string

POINTS = [
    (0.5, -1.0),
    (0.5, 4.0),
    (0.8, -12j),
    (0.5, complex(mp.cos(-mp.pi / 4), mp.sin(-mp.pi / 4))),
    (0.6, complex(10 * mp.cos(-0.3 * mp.pi), 10 * mp.sin(-0.3 * mp.pi))),
    (0.7, 0.0),
    (0.2, 0.0),
]


def main():
    out = sys.stdout
    out.write("# beta Re(z) Im(z) Re(E) Im(E)\n")
    for beta, zc in POINTS:
        zc = complex(zc)
        re_s, im_s = to_double_string(zc.real), to_double_string(zc.imag)
        z = mp.mpc(float(re_s), float(im_s))
        ref = series(beta, z)
        if beta < 1.0 and z != 0:
            alt = integral(beta, z)
            assert abs(ref - alt) <= mp.mpf(1e-35) * max(abs(ref), 1), (beta, z, ref, alt)
        out.write("%s %s %s %s %s\n" % (repr(beta), re_s, im_s,
                                        mp.nstr(ref.real, 16, min_fixed=1, max_fixed=0),
                                        mp.nstr(ref.imag, 16, min_fixed=1, max_fixed=0)))


if __name__ == "__main__":
    main()
