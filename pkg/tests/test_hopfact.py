import pytest

from ncg.bimod import ModElem
from ncg.calculus import DZ, DZB, disk_calculus
from ncg.errors import NcgError
from ncg.hopfact import (GENERATORS, DiskAction, antipode_gen, counit, d_equivariance_failures,
                         integral_invariance_failures, invariance_failures, invariant_metric, module_algebra_failures,
                         relation_failures, star_gen, unitarity_failures)
from ncg.ncalg import normal_words
from ncg.scalar import SYMBOLIC
from ncg.spectral import DiskIntegral

F = SYMBOLIC


@pytest.fixture(scope="module", params=[False, True], ids=["disk", "localized"])
def action(request):
    return DiskAction(disk_calculus(localized=request.param))


@pytest.fixture(scope="module")
def disk():
    return DiskAction(disk_calculus())


def words(A, L):
    P = A.alg
    return [P.element({w: F.one}) for w in normal_words(P, L)]


def test_generator_values(disk):
    P = disk.alg
    z, zb, w = P.gen("z"), P.gen("zb"), P.gen("w")
    assert disk.act("X+", z) == P.scalar(F.s(-1))
    assert disk.act("X-", zb) == P.scalar(F.s(1))
    assert disk.act("X+", w) == (w * zb).scale(-F.s(1))
    assert disk.act("K", z) == z.scale(F.q(-1))
    assert disk.act(["K", "K^-1"], z * zb * z) == z * zb * z


def test_hopf_structure_tables():
    assert [counit(h) for h in GENERATORS] == [0, 0, 1, 1]
    assert star_gen("X+") == (-1, "X-")
    assert antipode_gen("X+", F) == (-F.q(1), "X+")
    assert antipode_gen("K", F) == (F.one, "K^-1")
    with pytest.raises(NcgError):
        counit("Y")


def test_module_algebra_law(action):
    assert module_algebra_failures(action) == []


def test_quantum_group_relations(action):
    assert relation_failures(action, words(action, 3)) == []


def test_d_equivariance(action):
    assert d_equivariance_failures(action, words(action, 3)) == []


def test_unitarity(action):
    assert unitarity_failures(action, words(action, 3)) == []


def test_invariant_metric():
    A = DiskAction(disk_calculus(localized=True))
    g = invariant_metric(A.calc)
    assert invariance_failures(A, g) == []
    P = A.alg
    control = ModElem(P, {(DZ, DZB): P.one()})
    assert invariance_failures(A, control, ["X+"])


def test_integral_invariance_for_higher_powers(disk):
    P = disk.alg
    xs = [P.parse(f"{a}*w^{n}") for a in ("z", "zb", "w") for n in range(2, 5)]
    assert integral_invariance_failures(disk, xs) == []


def test_integral_invariance_first_power_value(disk):
    """X+ on z w leaves the domain's normalisation: ∫(X+▷(z w)) = q^(-5/2), not 0."""
    P = disk.alg
    I = DiskIntegral(P)
    zw = P.parse("z*w")
    image = disk.act("X+", zw)
    assert image.scale(F.s(1)) == P.parse("q^(-2)*w^2")
    assert I(image) == F.s(-5)
    fails = integral_invariance_failures(disk, [zw])
    assert len(fails) == 1 and "X+" in fails[0]


@pytest.mark.xfail(strict=True, reason="the n = 1 instance gives q^(-5/2); see the decisions ledger")
def test_integral_invariance_on_z_w_powers_one_to_four(disk):
    P = disk.alg
    xs = [P.parse(f"z*w^{n}") for n in range(1, 5)]
    assert integral_invariance_failures(disk, xs) == []
