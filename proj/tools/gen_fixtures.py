#!/usr/bin/env python3
# Copyright 2026 The splitcc Authors
# SPDX-License-Identifier: Apache-2.0
"""Generate FCIDUMP fixtures (RHF canonical orbitals) with PySCF.

Usage:
  gen_fixtures.py small <outdir>      H2/STO-3G, H4 square/STO-3G, N2/6-31G at 1.09 A
  gen_fixtures.py n2curve <outdir>    N2/cc-pVDZ, R = 0.8 ... 2.8 A in 0.1 A steps

Exits with status 77 when PySCF is not importable so ctest can mark
dependent tests as skipped.
"""
import os
import sys

try:
    from pyscf import gto, scf
    from pyscf.tools import fcidump
except ImportError:
    print("pyscf not available", file=sys.stderr)
    sys.exit(77)


def rhf(atom, basis, guess="minao", follow_instabilities=True, symmetry=False):
    mol = gto.M(atom=atom, basis=basis, unit="Angstrom", verbose=0, symmetry=symmetry)
    mf = scf.RHF(mol)
    mf.init_guess = guess
    mf.conv_tol = 1e-12
    mf.kernel()
    if not mf.converged:
        raise RuntimeError(f"RHF not converged for {atom}")
    if not follow_instabilities:
        return mf
    # Follow internal instabilities down to the lowest RHF solution.
    for _ in range(5):
        mo, _, stable, _ = mf.stability(return_status=True)
        if stable:
            break
        mf.kernel(dm0=mf.make_rdm1(mo, mf.mo_occ))
    return mf


def write(mf, path):
    fcidump.from_scf(mf, path, tol=1e-14)
    print(f"{path}: E_HF = {mf.e_tot:.10f}")


def small(outdir):
    write(rhf("H 0 0 0; H 0 0 0.7414", "sto-3g"), os.path.join(outdir, "h2_sto3g.fcidump"))
    a = 1.23
    # The default minao guess lands on a higher RHF saddle for the square.
    h4 = rhf(f"H 0 0 0; H {a} 0 0; H {a} {a} 0; H 0 {a} 0", "sto-3g", guess="atom")
    write(h4, os.path.join(outdir, "h4_square_1.23_sto3g.fcidump"))
    write(rhf("N 0 0 0; N 0 0 1.09", "6-31g"), os.path.join(outdir, "n2_1.09_631g.fcidump"))


def n2curve(outdir):
    # Symmetry-adapted RHF on every geometry. Following RHF instabilities
    # here would switch to symmetry-broken solutions beyond ~1.7 A.
    for k in range(21):
        r = 0.8 + 0.1 * k
        mf = rhf(f"N 0 0 0; N 0 0 {r:.1f}", "cc-pvdz", follow_instabilities=False,
                 symmetry=True)
        write(mf, os.path.join(outdir, f"n2_ccpvdz_{r:.1f}.fcidump"))


def main():
    if len(sys.argv) != 3 or sys.argv[1] not in ("small", "n2curve"):
        print(__doc__, file=sys.stderr)
        return 2
    outdir = sys.argv[2]
    os.makedirs(outdir, exist_ok=True)
    {"small": small, "n2curve": n2curve}[sys.argv[1]](outdir)
    return 0


if __name__ == "__main__":
    sys.exit(main())
