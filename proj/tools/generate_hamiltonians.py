#!/usr/bin/env python3
# Copyright 2026 The dvqe Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#     http://www.apache.org/licenses/LICENSE-2.0
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes qubit Hamiltonians for H2 (2 qubits) and LiH (4 qubits).

Requires openfermion, pyscf and openfermionpyscf. Both molecules use the
STO-3G basis and the symmetry-conserving Bravyi-Kitaev mapping, which removes
two qubits by fixing particle number and spin parity. LiH freezes the 1s core
and keeps three active spatial orbitals.

Output: one `<coefficient> <axes>` line per term, axes[0] is qubit 0.
"""
import argparse
import json
import pathlib

from openfermion import MolecularData, get_fermion_operator
from openfermion import symmetry_conserving_bravyi_kitaev
from openfermionpyscf import run_pyscf


def qubit_hamiltonian(geometry, active=None, occupied=None):
    mol = MolecularData(geometry, "sto-3g", 1, 0)
    mol = run_pyscf(mol, run_scf=True)
    ham = mol.get_molecular_hamiltonian(occupied_indices=occupied,
                                        active_indices=active)
    fop = get_fermion_operator(ham)
    modes = 2 * (len(active) if active else mol.n_orbitals)
    electrons = mol.n_electrons - 2 * (len(occupied) if occupied else 0)
    return symmetry_conserving_bravyi_kitaev(fop, modes, electrons), modes - 2


def write_terms(path, op, qubits, header):
    lines = [f"# {header}"]
    for term, coeff in sorted(op.terms.items()):
        axes = ["I"] * qubits
        for idx, axis in term:
            axes[idx] = axis
        value = float(coeff.real)
        if abs(value) < 1e-12:
            continue
        lines.append(f"{value:.15f} {''.join(axes)}")
    path.write_text("\n".join(lines) + "\n")


def sweep(out, name, distances, anchor, build):
    folder = out / name
    folder.mkdir(parents=True, exist_ok=True)
    files = {}
    for d in distances:
        op, qubits = build(d)
        fname = f"{name}_{d:.3f}.txt"
        write_terms(folder / fname, op, qubits, f"{name} STO-3G bond {d:.3f} A")
        files[f"{d:.3f}"] = fname
    plan = {"schema": 1, "anchor_distance": anchor,
            "bond_distances": distances, "hamiltonian_files": files}
    (folder / "plan.json").write_text(json.dumps(plan, indent=2) + "\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data", type=pathlib.Path)
    args = parser.parse_args()

    h2 = [round(0.491 + 0.25 * i, 3) for i in range(7)]
    sweep(args.out, "h2", h2, 0.741,
          lambda d: qubit_hamiltonian([("H", (0, 0, 0)), ("H", (0, 0, d))]))

    lih = [round(0.7 + 0.2 * i, 3) for i in range(11)]
    sweep(args.out, "lih", lih, 1.5,
          lambda d: qubit_hamiltonian([("Li", (0, 0, 0)), ("H", (0, 0, d))],
                                      active=[1, 2, 3], occupied=[0]))


if __name__ == "__main__":
    main()
