"""Straight-line programs from tensor decompositions

Text format, one instruction per line:

    t3 = t1 + a0        addition (also '-')
    t4 = 2 * a5         scalar multiple, scalar given as a GF(q) code
    m7 = t3 * t9        bilinear product

Inputs are a0.. and b0.. (power-basis codes), outputs c0.. .
"""
import logging
import re
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError, ValidationError
from .fields import galois_field
from .tensor import TensorDecomposition

logger = logging.getLogger(__name__)

INSTRUCTION = re.compile(r"^(\w+)\s*=\s*(\w+)\s*([-+*])\s*(\w+)$")


@dataclass(frozen=True)
class Instruction:
    target: str
    op: str
    left: str
    right: str

    @property
    def kind(self) -> str:
        if self.op in '+-':
            return 'add'
        return 'product' if self.target.startswith('m') else 'scale'

    def __str__(self) -> str:
        return f"{self.target} = {self.left} {self.op} {self.right}"


@dataclass
class SlpProgram:
    q: int
    n: int
    instructions: List[Instruction] = dataclass_field(default_factory=list)

    @property
    def counts(self) -> Dict[str, int]:
        out = {'product': 0, 'add': 0, 'scale': 0}
        for ins in self.instructions:
            out[ins.kind] += 1
        return {'products': out['product'], 'additions': out['add'], 'scalar_multiplications': out['scale']}

    def to_text(self) -> str:
        n = self.n
        header = [
            f"# slp q={self.q} n={n} products={self.counts['products']}",
            f"input a0..a{n - 1} b0..b{n - 1}",
            f"output c0..c{n - 1}",
        ]
        return "\n".join(header + [str(ins) for ins in self.instructions]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> 'SlpProgram':
        lines = [line.strip() for line in text.splitlines() if line.strip()]
        head = re.search(r"q=(\d+)\s+n=(\d+)", lines[0]) if lines else None
        if head is None:
            raise ValidationError("missing '# slp q=.. n=..' header")
        program = cls(int(head.group(1)), int(head.group(2)))
        for line in lines[1:]:
            if line.startswith(('#', 'input', 'output')):
                continue
            match = INSTRUCTION.match(line)
            if match is None:
                raise ValidationError(f"bad instruction {line!r}")
            target, left, op, right = match.groups()
            program.instructions.append(Instruction(target, op, left, right))
        return program

    def run(self, a: Sequence[int], b: Sequence[int]) -> List[int]:
        """Replay on input codes; returns output codes"""
        F = galois_field(self.q)
        registers: Dict[str, object] = {}
        for i in range(self.n):
            registers[f"a{i}"] = F.decode(int(a[i]))
            registers[f"b{i}"] = F.decode(int(b[i]))

        def read(name: str):
            if name not in registers:
                raise DomainError(f"register {name} read before it is written")
            return registers[name]

        for ins in self.instructions:
            if ins.op == '+':
                value = F.add(read(ins.left), read(ins.right))
            elif ins.op == '-':
                value = F.sub(read(ins.left), read(ins.right))
            elif ins.kind == 'scale':
                value = F.mul(F.decode(int(ins.left)), read(ins.right))
            else:
                value = F.mul(read(ins.left), read(ins.right))
            registers[ins.target] = value
        return [F.encode(registers.get(f"c{i}", F.zero)) for i in range(self.n)]


class _Emitter:
    def __init__(self, program: SlpProgram, field):
        self.program = program
        self.field = field
        self.next = 0
        self.one = field.encode(field.one)
        self.minus_one = field.encode(field.neg(field.one))

    def temp(self) -> str:
        name = f"t{self.next}"
        self.next += 1
        return name

    def emit(self, target: str, op: str, left: str, right: str) -> str:
        self.program.instructions.append(Instruction(target, op, left, right))
        return target

    def combination(self, row: np.ndarray, names: Sequence[str], target: Optional[str] = None) -> str:
        """Register holding sum_i row[i] * names[i]"""
        terms: List[Tuple[int, str]] = [(int(c), names[i]) for i, c in enumerate(row) if c]
        if not terms:
            return self.emit(target or self.temp(), '*', '0', names[0])
        first_code, first = terms[0]
        if len(terms) == 1 and first_code == self.one and target is None:
            return first
        if first_code != self.one or len(terms) == 1:
            acc = self.emit(target if len(terms) == 1 and target else self.temp(), '*', str(first_code), first)
        else:
            acc = first
        for k, (code, name) in enumerate(terms[1:], start=2):
            out = target if (k == len(terms) and target) else self.temp()
            if code == self.one:
                acc = self.emit(out, '+', acc, name)
            elif code == self.minus_one:
                acc = self.emit(out, '-', acc, name)
            else:
                scaled = self.emit(self.temp(), '*', str(code), name)
                acc = self.emit(out, '+', acc, scaled)
        return acc


def emit_slp(tensor: TensorDecomposition) -> SlpProgram:
    """Program with exactly ``tensor.rank`` bilinear products"""
    program = SlpProgram(tensor.q, tensor.n)
    F = tensor.base
    emitter = _Emitter(program, F)
    a = [f"a{i}" for i in range(tensor.n)]
    b = [f"b{i}" for i in range(tensor.n)]
    left, right = tensor.power_forms(), tensor.power_forms(True)
    products = []
    for j in range(tensor.rank):
        x = emitter.combination(left[j], a)
        y = emitter.combination(right[j], b)
        products.append(emitter.emit(f"m{j}", '*', x, y))
    for i in range(tensor.n):
        emitter.combination(tensor.w[:, i], products, target=f"c{i}")
    counts = program.counts
    if counts['products'] != tensor.rank:
        raise DomainError(f"emitted {counts['products']} products for a rank-{tensor.rank} tensor")
    logger.info(f"emitted SLP: {counts}")
    return program
