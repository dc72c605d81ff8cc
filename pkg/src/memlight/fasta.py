"""Minimal FASTA reading: headers, sequences, blank lines and ';' comments."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class FastaRecord:
    id: str
    sequence: bytes

    def __post_init__(self):
        if not self.id:
            raise ValueError("FASTA record with empty id")
        if not self.sequence:
            raise ValueError(f"FASTA record {self.id!r} has an empty sequence")


def parse_fasta(data: bytes) -> list[FastaRecord]:
    records = []
    name = None
    chunks: list[bytes] = []
    for line in data.splitlines():
        line = line.strip()
        if not line or line.startswith(b";"):
            continue
        if line.startswith(b">"):
            if name is not None:
                records.append(FastaRecord(name, b"".join(chunks)))
            name = line[1:].split()[0].decode() if line[1:].split() else ""
            chunks = []
        elif name is not None:
            chunks.append(line)
        else:
            raise ValueError("sequence data before the first FASTA header")
    if name is not None:
        records.append(FastaRecord(name, b"".join(chunks)))
    return records


def read_fasta(path) -> list[FastaRecord]:
    return parse_fasta(Path(path).read_bytes())
