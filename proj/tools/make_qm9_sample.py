#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Regenerates the QM9-style test fixtures under tests/data/.

Requires RDKit (pip install rdkit). Molecules are small neutral organics
built from C, N, O, F with at most nine heavy atoms, embedded with ETKDG and
written as kekulized V2000 records with explicit hydrogens.
"""

import argparse
import pathlib

from rdkit import Chem
from rdkit.Chem import AllChem

SMILES = """
CCO CCCO CC(C)O CCCCO CC(C)(C)O CCOC CCOCC COCCO OCCO CC(O)CO
CC=O CCC=O CC(C)=O CCC(C)=O CC(=O)O CCC(=O)O CC(=O)OC COC=O CC(=O)N
CC(N)=O CCN CCCN CC(C)N CNC CCNC CN(C)C NCCO NCCN CC#N
CCC#N CC#C CCC#C C#CCO C#CC=O CC=C CCC=C C=CC=C C=CC#N C=CC=O
FCC(F)F CCF FCCO OCC#N CC(F)F CC(=O)F OC(=O)CF NC(=O)CO CC(=O)C=O O=CC=O
C1CC1 C1CCC1 C1CCCC1 C1CCCCC1 C1CO1 C1CCO1 C1CCOC1 C1CCNC1 C1CN1 OC1CC1
CC1CC1 CC1CCC1 CC1CCCC1 NC1CC1 O=C1CCC1 O=C1CCCC1 C1=CCCC1 C1=CCC1 OC1CCC1 CC1(C)CC1
c1ccccc1 Cc1ccccc1 Oc1ccccc1 Nc1ccccc1 Fc1ccccc1 c1ccncc1 Cc1ccncc1 c1ccoc1 c1cc[nH]c1 c1cscc1
c1ncc[nH]1 c1cnoc1 c1conc1 Cc1ccco1 Cc1ccc[nH]1 O=c1cc[nH]cc1 c1cnccn1 c1ncncn1 c1ccnnc1 Cc1cnccn1
CCOC(C)=O CC(=O)CC=O CCCC=O CCCCC CC(C)CC CCC(C)(C)C CCCCCC CC(C)C(C)C OCC(O)CO NCC(=O)O
CC(N)C(=O)O OC(=O)C(=O)O COC(C)=O CC(=O)NC CNC=O CC(=O)OC=O CC1=CC(=O)C1 N#CC#N N#CCC#N O=C1NC=CC1
CC(O)C#N CC(C)(O)C#N OCC1CC1 CC1OC1C CC1(O)CC1 OC1COC1 NC1COC1 CC(=O)C1CC1 O=CC1CC1 C#CC1CC1
CCCCCCC CCCCCCO CCCCCOC CCOCCOC CC(C)CCO CC(C)OC(C)C CCCC(=O)O CCCC(N)=O CCCCN CCCCCN
CC(C)CC(=O)O CCOCC=O OCCCCO NCCCCN CCCCC#N CC(C)(C)C#N CCCCC=O CC(C)(C)C=O CCC(=O)CC CCCOC=O
C1CCC(O)C1 C1CCC(N)CC1 CC1CCCCC1 OC1CCCCC1 O=C1CCCCC1 C1CCOCC1 C1CCNCC1 C1COCCN1 C1COCCO1 CC1CCOC1
""".split()


def embed(smiles, seed):
    mol = Chem.MolFromSmiles(smiles)
    if mol is None or Chem.GetFormalCharge(mol) != 0:
        return None
    mol = Chem.AddHs(mol)
    if not 10 <= mol.GetNumAtoms() <= 29:
        return None
    if AllChem.EmbedMolecule(mol, randomSeed=seed) != 0:
        return None
    AllChem.MMFFOptimizeMolecule(mol)
    Chem.Kekulize(mol, clearAromaticFlags=True)
    mol.SetProp("_Name", smiles)
    return mol


def write(path, mols):
    with open(path, "w", newline="\n") as fh:
        for mol in mols:
            fh.write(Chem.MolToMolBlock(mol, kekulize=True))
            fh.write("$$$$\n")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default=pathlib.Path(__file__).parent.parent / "tests" / "data")
    parser.add_argument("--count", type=int, default=100)
    args = parser.parse_args()
    out = pathlib.Path(args.out)

    mols, seen = [], set()
    for seed, smi in enumerate(SMILES):
        canon = Chem.CanonSmiles(smi)
        if canon in seen:
            continue
        mol = embed(smi, seed + 7)
        if mol is None:
            continue
        seen.add(canon)
        mols.append(mol)
        if len(mols) == args.count:
            break
    if len(mols) < args.count:
        raise SystemExit(f"only {len(mols)} molecules embedded")
    write(out / "qm9_sample.sdf", mols)

    picks = {"ethanol": "CCO", "acetic_acid": "CC(=O)O", "pyridine": "c1ccncc1",
             "cyclohexane": "C1CCCCC1", "alanine": "CC(N)C(=O)O"}
    five = []
    for name, smi in picks.items():
        mol = embed(smi, 42)
        if mol is None:
            mol = Chem.AddHs(Chem.MolFromSmiles(smi))
            AllChem.EmbedMolecule(mol, randomSeed=42)
            Chem.Kekulize(mol, clearAromaticFlags=True)
        mol.SetProp("_Name", name)
        five.append(mol)
    write(out / "five_molecules.sdf", five)


if __name__ == "__main__":
    main()
