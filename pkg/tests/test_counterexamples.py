import random
import threading
from decimal import Decimal, getcontext
from fractions import Fraction as F

import pytest

from ofl import counterexamples as cx
from ofl.cuts import AlgebraicNumber
from ofl.errors import DegenerateInterval, InvalidInterval, OutOfDomain

ROOT2 = AlgebraicNumber.sqrt(2)
getcontext().prec = 60
SQRT2_DEC = Decimal(2).sqrt()


@pytest.fixture(scope="module")
def thm12():
    return cx.build_theorem12_map(0, 1, F(1, 2))


@pytest.fixture(scope="module")
def thm21i():
    return cx.build_theorem21i_map(0, 1)


@pytest.fixture(scope="module")
def thm21ii():
    return cx.build_theorem21ii_map(0, 1, F(1, 2))


# --- nets ------------------------------------------------------------------


def test_halving_net():
    spec = cx.NetSpec(F(1, 2), cx.INCREASING, cx.HALVING, 0)
    assert [cx.make_net(spec, n) for n in range(4)] == [0, F(1, 4), F(3, 8), F(7, 16)]


def test_dyadic_net_toward_sqrt2():
    up = cx.NetSpec(ROOT2, cx.INCREASING, cx.DYADIC, 1)
    terms = [cx.make_net(up, n) for n in range(40)]
    assert terms[:4] == [1, F(5, 4), F(11, 8), F(45, 32)]
    down = cx.NetSpec(ROOT2, cx.DECREASING, cx.DYADIC, 2)
    dterms = [cx.make_net(down, n) for n in range(40)]
    assert dterms[:3] == [2, F(3, 2), F(23, 16)]
    for n, (x, y) in enumerate(zip(terms, dterms)):
        # strict monotonicity, the dyadic error bound, rational terms never equal to sqrt 2
        if n:
            assert terms[n - 1] < x and dterms[n - 1] > y
        assert 0 < SQRT2_DEC - Decimal(x.numerator) / x.denominator <= Decimal(2) ** -n
        assert 0 < Decimal(y.numerator) / y.denominator - SQRT2_DEC <= Decimal(2) ** -n


def test_net_spec_validation():
    with pytest.raises(ValueError):
        cx.NetSpec(F(1, 2), cx.INCREASING, cx.HALVING, 1)
    with pytest.raises(ValueError):
        cx.NetSpec(ROOT2, cx.INCREASING, cx.HALVING, 1)
    with pytest.raises(ValueError):
        cx.NetSpec(1, "sideways", cx.HALVING, 0)


# --- affine transport --------------------------------------------------------


def test_affine_transport_examples():
    s = cx.affine_transport(0, 1, 0, 2)
    assert (s.slope, s.intercept) == (2, 0)
    s = cx.affine_transport(0, 1, 5, 4)
    assert (s.slope, s.intercept) == (-1, 5)
    with pytest.raises(DegenerateInterval):
        cx.affine_transport(1, 1, 0, 2)
    with pytest.raises(DegenerateInterval):
        cx.affine_transport(0, 1, 3, 3)


def test_affine_transport_inverse_is_identity():
    rng = random.Random(2)
    for _ in range(50):
        a1, a2, b1, b2 = (F(rng.randint(-100, 100), rng.randint(1, 9)) for _ in range(4))
        if a1 == a2 or b1 == b2:
            continue
        fwd, back = cx.affine_transport(a1, a2, b1, b2), cx.affine_transport(b1, b2, a1, a2)
        for _ in range(10):
            x = F(rng.randint(-1000, 1000), rng.randint(1, 50))
            assert back(fwd(x)) == x


# --- injective map fixing c on the image boundary -----------------------


def test_thm12_examples(thm12):
    assert cx.eval_map(thm12, F(1, 2)) == F(1, 2)
    xs = cx.sample_points(thm12, 2000, 1)
    vals = [cx.eval_map(thm12, x) for x in xs]
    assert all(v > F(1, 2) for x, v in zip(xs, vals) if x != F(1, 2))
    assert len(set(vals)) == len(vals)


def test_thm12_lazy_deepening(thm12):
    x = F(1, 2) - F(1, 2**20)
    seg = thm12.locate(x)
    assert seg.label.startswith("S") and 17 <= int(seg.label[1:]) <= 21
    assert cx.eval_map(thm12, x) > F(1, 2)


def test_thm12_slice_partition(thm12):
    rng = random.Random(9)
    depth = 25
    for _ in range(500):
        x = F(rng.randint(0, 10**6), 10**6)
        if x == F(1, 2) or abs(x - F(1, 2)) < F(1, 2**22):
            continue
        owners = [f"{fam}{n}" for fam in "ST" for n in range(depth)
                  if thm12.slice_interval(f"{fam}{n}").contains(x)]
        assert len(owners) == 1
        assert owners[0] == thm12.locate(x).label


def test_thm12_image_discipline_and_parity(thm12):
    assert cx.check_image_discipline(thm12, 30) == []
    assert cx.odd_even_separated(thm12, 30)
    for n in range(10):
        assert thm12.segment("S", n).target == f"T{2 * n}"
        assert thm12.segment("T", n).target == f"T{2 * n + 1}"


def _rational(endpoint):
    return endpoint.approx() if isinstance(endpoint, AlgebraicNumber) else endpoint


def test_local_continuity(thm12):
    # each piece is affine: |f(x) - f(y)| = |slope| |x - y| on a closed subinterval
    rng = random.Random(4)
    for family in "ST":
        for n in range(6):
            seg = thm12.segment(family, n)
            lo, hi = _rational(seg.source.lo), _rational(seg.source.hi)
            width = hi - lo
            for _ in range(1000 // 12):
                x = lo + width * F(rng.randint(1, 999), 1000)
                y = lo + width * F(rng.randint(1, 999), 1000)
                if not (seg.contains(x) and seg.contains(y)):
                    continue
                assert abs(seg(x) - seg(y)) == abs(seg.slope) * abs(x - y)
                assert cx.eval_map(thm12, x) == seg(x)


def test_invalid_parameters():
    with pytest.raises(InvalidInterval):
        cx.build_theorem12_map(0, 1, 2)
    with pytest.raises(InvalidInterval):
        cx.build_theorem21i_map(1, 1)
    m = cx.build_corollary13_map(0, 1, F(1, 3))
    with pytest.raises(OutOfDomain):
        cx.eval_map(m, F(3, 2))


def test_corollary13_is_injective_non_open():
    m = cx.build_map("cor13", 0, 1, F(1, 3))
    r = cx.probe_pathologies(m, 1500, 3)
    assert r["collisions"] == 0 and r["c_is_boundary_of_image"]


def test_concurrent_evaluation_is_consistent():
    m = cx.build_theorem12_map(0, 1, F(1, 2))
    xs = cx.sample_points(m, 400, 8)
    results = {}

    def work(k):
        results[k] = [cx.eval_map(m, x) for x in (xs if k % 2 else reversed(xs))]

    threads = [threading.Thread(target=work, args=(k,)) for k in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    ref = [cx.eval_map(cx.build_theorem12_map(0, 1, F(1, 2)), x) for x in xs]
    assert results[1] == results[3] == ref
    assert results[0] == results[2] == ref[::-1]


# --- unbounded, non-uniformly continuous map --------------------------


def test_thm21i_examples(thm21i):
    assert cx.eval_map(thm21i, 0) == 1
    mid = (thm21i.theta1.approx() + thm21i.theta2.approx()) / 2
    assert cx.eval_map(thm21i, mid) == 1
    assert cx.eval_map(thm21i, thm21i.a_(1000)) > 1000
    assert cx.eval_map(thm21i, 1) == -1


def test_thm21i_uniform_continuity_fails(thm21i):
    ws = cx.uniform_continuity_witnesses(thm21i, 20)
    assert len(ws) == 20
    for k, n, x, y, gap in ws:
        assert y - x < F(1, 2**k) and gap >= 1
    for n in range(30):
        assert thm21i.u_(n + 1) - thm21i.u_(n) >= 1


def test_thm21i_range_excludes_zero(thm21i):
    assert cx.segment_images_avoid(thm21i, F(0), 200)
    assert thm21i.d_(10**6) == F(-1, 10**6 + 1)
    assert cx.eval_map(thm21i, thm21i.b_(50)) == thm21i.d_(50)


# --- interior-preserving, non-open map ---------------------------------


def test_thm21ii_examples(thm21ii):
    assert cx.eval_map(thm21ii, F(1, 2)) == F(1, 2)
    t0 = thm21ii.t_slice(0)
    rng = random.Random(6)
    lo, hi = thm21ii.v(0).approx(), F(1)
    hits = 0
    while hits < 1000:
        x = lo + (hi - lo) * F(rng.randint(1, 10**6), 10**6)
        if not t0.contains(x):
            continue
        hits += 1
        assert 0 <= cx.eval_map(thm21ii, x) < F(1, 2)
    a1, b1 = thm21ii.a_(1), thm21ii.b_(1)
    for _ in range(1000):
        x = a1 + (b1 - a1) * F(rng.randint(1, 10**6 - 1), 10**6)
        v = cx.eval_map(thm21ii, x)
        assert v >= F(1, 2) and (v == F(1, 2)) == (x == F(1, 2))


def test_thm21ii_pieces(thm21ii):
    assert cx.check_image_discipline(thm21ii, 20) == []
    for n in range(10):
        assert thm21ii.e_(n + 1) < thm21ii.e_(n)
        assert thm21ii.v(0).compare_rational(thm21ii.e_(n)) < 0


def test_report_is_key_value(thm12):
    text = cx.format_report(cx.probe_pathologies(thm12, 300, 0))
    for line in text.splitlines():
        key, _, value = line.partition("=")
        assert key and value


def test_sampling_is_deterministic(thm12):
    assert cx.sample_points(thm12, 500, 42) == cx.sample_points(thm12, 500, 42)
    assert cx.sample_points(thm12, 500, 42) != cx.sample_points(thm12, 500, 43)
