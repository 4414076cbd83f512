import mpmath
import pytest
import sympy
from sympy import Poly, QQ

from fixturegen.engine.field import FieldError, NumberField, parse_poly
from fixturegen.engine.galois import GaloisGroup, primitive_element, roots_in_field
from fixturegen.engine.invariants import (
    class_number,
    fundamental_unit_rank1,
    regulator_own_places,
    roots_of_unity,
    search_unit,
)
from fixturegen.engine.quadratic import (
    fundamental_unit_xy,
    imaginary_class_number,
    kronecker,
    quadratic_invariants,
)
from fixturegen.engine.s3units import qth_root

X = sympy.symbols("x")


def test_parse_poly_rejects_bad_input():
    with pytest.raises(FieldError):
        parse_poly("x^2 - 1")  # reducible
    with pytest.raises(FieldError):
        parse_poly("2*x^2 + 1")  # not monic
    with pytest.raises(FieldError):
        parse_poly("x + oops")


def test_field_arithmetic_cubic():
    k = NumberField(parse_poly("x^3-2"))
    assert k.disc == -108
    theta = k.gen()
    lam = k.sub(theta, k.one())
    assert k.norm(lam) == 1
    assert abs(k.norm(theta)) == 2
    cube = k.power(theta, 3)
    assert cube == k.scal(2, k.one())
    coords = k.to_integral(lam)
    assert coords is not None
    assert k.from_integral(coords) == lam


def test_kronecker_known_values():
    # chi_{-4}: 1, 0, -1 pattern mod 4
    assert [kronecker(-4, a) for a in (1, 2, 3, 5, 7)] == [1, 0, -1, 1, -1]
    assert [kronecker(8, a) for a in (1, 3, 5, 7)] == [1, -1, -1, 1]


def test_quadratic_class_numbers():
    assert imaginary_class_number(-3) == 1
    assert imaginary_class_number(-4) == 1
    assert imaginary_class_number(-8) == 1
    assert imaginary_class_number(-15) == 2
    assert imaginary_class_number(-23) == 3
    assert quadratic_invariants(8) == {"h": 1, "w": 2, "unit_xy": (2, 1)}
    assert quadratic_invariants(5)["unit_xy"] == (1, 1)  # golden ratio
    assert quadratic_invariants(12)["unit_xy"] == (4, 1)  # 2 + sqrt(3)
    assert quadratic_invariants(40)["h"] == 2  # Q(sqrt 10)


def test_roots_of_unity():
    assert roots_of_unity(NumberField(parse_poly("x^4+1")))[0] == 8
    assert roots_of_unity(NumberField(parse_poly("x^3-2")))[0] == 2
    w, zeta = roots_of_unity(NumberField(parse_poly("x^2+3")))
    assert w == 6
    k = NumberField(parse_poly("x^2+3"))
    assert k.power(zeta, 6) == k.one()
    assert k.power(zeta, 3) != k.one()


def test_class_number_proofs():
    assert class_number(NumberField(parse_poly("x^3-2"))) == 1
    assert class_number(NumberField(parse_poly("x^4+1"))) == 1


def test_fundamental_unit_cubic_regulator():
    k = NumberField(parse_poly("x^3-2"))
    u = fundamental_unit_rank1(k)
    with mpmath.workdps(40):
        r = regulator_own_places(k, [u])
        expected = mpmath.log(1 + mpmath.cbrt(2) + mpmath.cbrt(4))
        assert abs(r - expected) < mpmath.mpf("1e-35")


def test_fundamental_unit_zeta8_regulator():
    k = NumberField(parse_poly("x^4+1"))
    u = fundamental_unit_rank1(k)
    with mpmath.workdps(40):
        r = regulator_own_places(k, [u])
        expected = 2 * mpmath.log(1 + mpmath.sqrt(2))
        assert abs(r - expected) < mpmath.mpf("1e-35")


def test_galois_detection():
    k = NumberField(parse_poly("x^4+1"))
    assert len(roots_in_field(k)) == 4
    with pytest.raises(FieldError):
        roots_in_field(NumberField(parse_poly("x^3-2")))  # not Galois


def test_galois_group_structure_sextic():
    k = NumberField(parse_poly("x^6+3*x^5+6*x^4+3*x^3+9*x+9"))
    gal = GaloisGroup(k)
    orders = []
    for a in range(gal.order):
        x, n = a, 1
        while x != 0:
            x = gal.table[x][a]
            n += 1
        orders.append(n)
    assert sorted(orders) == [1, 2, 2, 2, 3, 3]  # S3
    classes = gal.conjugacy_classes()
    assert [(len(c), len(c[0])) for c in classes] == [(1, 1), (3, 2), (1, 3), (1, 6)]


def test_subfields_of_sextic():
    k = NumberField(parse_poly("x^6+3*x^5+6*x^4+3*x^3+9*x+9"))
    gal = GaloisGroup(k)
    classes = gal.conjugacy_classes()
    h2 = next(c[0] for c in classes if len(c[0]) == 2)
    theta, minpoly = primitive_element(k, gal.fixed_subfield(h2), 3)
    cubic = NumberField(Poly(sum(int(c) * X ** i for i, c in enumerate(minpoly)), X, domain=QQ))
    assert cubic.disc == -108  # Q(cbrt 2)
    h3 = next(c[0] for c in classes if len(c[0]) == 3)
    _, minpoly2 = primitive_element(k, gal.fixed_subfield(h3), 2)
    quad = NumberField(Poly(sum(int(c) * X ** i for i, c in enumerate(minpoly2)), X, domain=QQ))
    assert quad.disc == -3  # Q(zeta3)


def test_qth_root_roundtrip():
    k = NumberField(parse_poly("x^6+3*x^5+6*x^4+3*x^3+9*x+9"))
    u = search_unit(k)
    gamma = k.power(u, 3)
    root = qth_root(k, gamma, 3)
    assert root is not None
    assert k.power(root, 3) == gamma
    # a unit that is not a cube has no cube root
    assert qth_root(k, u, 3) is None or k.power(qth_root(k, u, 3), 3) == tuple(u)
