"""Finitely presented abelian groups Z^n / column-span(rels) and maps between
them: kernels, cokernels, orders and homology of two-step complexes.

This is the shared substrate behind fixed submodules, kernel/cokernel of
module maps and cohomology groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .exactlinalg import IntMatrix, cokernel_invariants, column_hnf, kernel_basis, solve


@dataclass(frozen=True)
class FpGroup:
    """Abelian group presented as Z^gens / column-span(rels)."""

    gens: int
    rels: IntMatrix

    def __post_init__(self):
        if self.rels.rows != self.gens:
            raise ValueError("relation matrix must have one row per generator")

    @classmethod
    def free(cls, n: int) -> "FpGroup":
        return cls(n, IntMatrix.zeros(n, 0))

    def invariants(self) -> tuple[int, ...]:
        return cokernel_invariants(self.rels)

    def free_rank(self) -> int:
        return sum(1 for d in self.invariants() if d == 0)

    def order(self) -> int | None:
        """Group order, or None when infinite."""
        inv = self.invariants()
        if any(d == 0 for d in inv):
            return None
        return prod(inv)

    def is_trivial(self) -> bool:
        return self.invariants() == ()


@dataclass(frozen=True)
class FpMap:
    """Homomorphism of presented groups, given on generators."""

    source: FpGroup
    target: FpGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.rows != self.target.gens or self.matrix.cols != self.source.gens:
            raise ValueError("matrix shape does not match source/target generators")
        if self.source.rels.cols and solve(self.target.rels, self.matrix * self.source.rels) is None:
            raise ValueError("map does not respect relations")

    def cokernel(self) -> FpGroup:
        return FpGroup(self.target.gens, self.matrix.hstack(self.target.rels))

    def kernel(self) -> tuple[FpGroup, IntMatrix]:
        """Kernel presentation plus a matrix whose columns express its
        generators inside the source generator space."""
        gens = preimage_lattice(self.matrix, self.target.rels)
        rels = express_in_lattice(gens, self.source.rels)
        rels = rels.hstack(kernel_basis(gens))
        return FpGroup(gens.cols, rels), gens

    def kernel_order(self) -> int | None:
        return self.kernel()[0].order()

    def cokernel_order(self) -> int | None:
        return self.cokernel().order()


def preimage_lattice(f: IntMatrix, target_rels: IntMatrix) -> IntMatrix:
    """Basis-ish generating matrix of {x in Z^cols(f) : f*x in im(target_rels)}.

    Columns generate the preimage lattice; they are independent (column HNF)
    but the lattice need not be saturated in the ambient Z^n.
    """
    stacked = f.hstack(target_rels)
    ker = kernel_basis(stacked)
    top = ker.submatrix(range(f.cols), range(ker.cols))
    return column_hnf(top)


def express_in_lattice(basis: IntMatrix, vectors: IntMatrix) -> IntMatrix:
    """Coordinates of `vectors` columns in the column lattice of `basis`.

    Raises if some column is not in the lattice (callers pass columns that are
    guaranteed to lie there; failure indicates a bug upstream).
    """
    if vectors.cols == 0:
        return IntMatrix.zeros(basis.cols, 0)
    x = solve(basis, vectors)
    if x is None:
        raise ArithmeticError("vector outside lattice in express_in_lattice")
    return x


def homology_group(
    d_in: IntMatrix | None,
    d_out: IntMatrix | None,
    mid_rels: IntMatrix,
    out_rels: IntMatrix | None,
) -> FpGroup:
    """Homology ker(d_out)/im(d_in) of presented groups at the middle term.

    d_in maps into the middle generator space Z^n (None for degree 0), d_out
    maps out of it (None means the zero map).  mid_rels presents the middle
    group; out_rels the target of d_out.
    """
    n = mid_rels.rows
    if d_out is None:
        cycle = IntMatrix.identity(n)
    else:
        cycle = preimage_lattice(d_out, out_rels if out_rels is not None else IntMatrix.zeros(d_out.rows, 0))
    boundary = mid_rels if d_in is None else d_in.hstack(mid_rels)
    rels = express_in_lattice(cycle, boundary).hstack(kernel_basis(cycle))
    return FpGroup(cycle.cols, rels)


def map_on_subquotients(
    f: IntMatrix,
    src_cycle: IntMatrix,
    src_group: FpGroup,
    tgt_cycle: IntMatrix,
    tgt_group: FpGroup,
) -> FpMap:
    """Induced FpMap on subquotients presented on cycle-lattice bases.

    src_group/tgt_group must be presented on the generators given by the
    columns of src_cycle/tgt_cycle; f maps the ambient source space to the
    ambient target space and must carry the source cycle lattice into the
    target one.
    """
    mapped = express_in_lattice(tgt_cycle, f * src_cycle)
    return FpMap(src_group, tgt_group, mapped)
