import numpy as np
import pytest

from elashift.suite import (
    FUNCTION_NAMES,
    Group,
    _rotation,
    evaluate,
    evaluate_batch,
    function_group,
    make_instance,
)

ALL_FIDS = range(1, 25)


def test_same_arguments_reconstruct_identical_instance():
    a = make_instance(1, 0, 5)
    b = make_instance(1, 0, 5)
    assert np.array_equal(a.x_opt, b.x_opt)
    assert a.f_opt == b.f_opt
    assert a.rotation_seeds == b.rotation_seeds


def test_instances_are_distinct_across_instance_ids():
    xopts = [make_instance(1, i, 20).x_opt for i in range(15)]
    for i in range(15):
        for j in range(i + 1, 15):
            assert not np.array_equal(xopts[i], xopts[j])


@pytest.mark.parametrize("fid,iid,dim", [(25, 0, 20), (0, 0, 20), (3, 0, 1), (3, -1, 5)])
def test_make_instance_domain_errors(fid, iid, dim):
    with pytest.raises(ValueError):
        make_instance(fid, iid, dim)


@pytest.mark.parametrize("fid", ALL_FIDS)
@pytest.mark.parametrize("iid", [0, 2])
def test_optimum_value_attained_at_x_opt(fid, iid):
    inst = make_instance(fid, iid, 20)
    assert abs(evaluate(inst, inst.x_opt) - inst.f_opt) < 1e-9


@pytest.mark.parametrize("fid", ALL_FIDS)
def test_optimum_in_low_dimension(fid):
    inst = make_instance(fid, 1, 2)
    assert abs(evaluate(inst, inst.x_opt) - inst.f_opt) < 1e-9


def test_x_opt_interior_except_linear_slope():
    # the linear slope places its optimum at a box corner by definition
    for fid in ALL_FIDS:
        inst = make_instance(fid, 0, 20)
        if fid == 5:
            assert np.all(np.abs(inst.x_opt) == 5.0)
        else:
            assert np.all(np.abs(inst.x_opt) < 5.0)


def test_sphere_unit_offset():
    inst = make_instance(1, 0, 5)
    x = inst.x_opt.copy()
    x[0] += 1.0
    assert evaluate(inst, x) == pytest.approx(inst.f_opt + 1.0, abs=1e-12)


def test_rosenbrock_inner_variable_inversion():
    # z = scale * (x - x_opt) + 1 equals the all-ones vector exactly at
    # x = x_opt + (1 - 1)/scale; invert the affine map and check the optimum
    inst = make_instance(8, 4, 20)
    scale = max(1.0, np.sqrt(20) / 8.0)
    x = inst.x_opt + (np.ones(20) - 1.0) / scale
    assert evaluate(inst, x) == pytest.approx(inst.f_opt, abs=1e-9)


def test_rotation_orthogonality():
    for seed in (1, 99, 12345):
        r = _rotation(seed, 20)
        assert np.abs(r.T @ r - np.eye(20)).max() < 1e-10


def test_group_representatives_cover_all_groups():
    groups = {make_instance(fid, 0, 5).group for fid in (1, 8, 11, 16, 20)}
    assert groups == set(Group)


def test_function_names_cover_catalog():
    assert sorted(FUNCTION_NAMES) == list(ALL_FIDS)
    for fid in ALL_FIDS:
        assert function_group(fid) in set(Group)


def test_evaluate_rejects_bad_points():
    inst = make_instance(1, 0, 5)
    with pytest.raises(ValueError):
        evaluate(inst, np.zeros(4))
    with pytest.raises(ValueError):
        evaluate(inst, np.array([0.0, np.nan, 0.0, 0.0, 0.0]))
    with pytest.raises(ValueError):
        evaluate_batch(inst, np.zeros((3, 4)))


def test_finite_on_box_and_slightly_outside(rng):
    X = rng.uniform(-5.5, 5.5, (40, 20))  # edges probe the soft-boundary path
    for fid in ALL_FIDS:
        inst = make_instance(fid, 0, 20)
        y = evaluate_batch(inst, X)
        assert y.shape == (40,)
        assert np.all(np.isfinite(y))


def test_repeated_evaluation_bit_identical(rng):
    X = rng.uniform(-5, 5, (10, 20))
    for fid in (2, 7, 16, 21, 24):
        inst = make_instance(fid, 3, 20)
        first = evaluate_batch(inst, X)
        again = evaluate_batch(make_instance(fid, 3, 20), X)
        assert np.array_equal(first, again)


def test_batch_matches_single_point(rng):
    # single-row evaluation takes a different BLAS path, so equality is to
    # rounding, not bitwise; bitwise determinism holds per code path
    X = rng.uniform(-5, 5, (7, 20))
    for fid in (4, 9, 13, 17, 23):
        inst = make_instance(fid, 1, 20)
        batch = evaluate_batch(inst, X)
        singles = np.array([evaluate(inst, row) for row in X])
        np.testing.assert_allclose(batch, singles, rtol=1e-12)
