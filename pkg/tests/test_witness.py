import numpy as np
import pytest

from ews.errors import (
    BadParamError,
    EpsilonVanishesError,
    FullRankError,
    IsPPTError,
    NotPPTError,
    OrthogonalityError,
    ProductStateError,
)
from ews.linalg import (
    BipartiteOperator,
    eig_hermitian,
    kron,
    pt_mat,
)
from ews.states import (
    PureState,
    canonical_state,
    is_ppt,
    max_entangled,
    pure_from_schmidt,
    random_state,
    tiles_upb_state,
    tiles_upb_vectors,
)
from ews.witness import (
    TAG_DEW,
    TAG_NDEW,
    FamilyParams,
    NdewParams,
    Witness,
    boost_witness,
    detect_npt,
    local_filter_to_max_entangled,
    mirror,
    ndew_from_edge,
    pure_pt_witness,
    sample_dew,
    spectral_report,
    w_family,
)

SQRT2 = np.sqrt(2.0)


class TestFamily:
    def test_pure_positive_part_is_not_witness(self):
        rep = spectral_report(w_family(FamilyParams(1, 0, 0, 0, 2, 2)))
        assert not rep.is_ew
        assert rep.bounds == []

    def test_bell_transpose_member(self):
        rep = spectral_report(w_family(FamilyParams(0, 1, 0, 0, 2, 2)))
        assert np.allclose(rep.lambdas, [0.5, 0.5, 0.5, -0.5])
        assert rep.is_ew
        assert abs(rep.negativity - 0.5) < 1e-12
        assert abs(rep.fro_sq - 1.0) < 1e-12

    def test_half_mix_two_qutrit_spectrum(self):
        rep = spectral_report(w_family(FamilyParams(0.5, 0.5, 0, 0, 3, 3)))
        expected = np.sort([0.0625] * 5 + [0.3125] * 3 + [-0.25])[::-1]
        assert np.abs(rep.lambdas - expected).max() < 1e-12
        assert abs(rep.lambdas.sum() - 1.0) < 1e-12

    def test_rejects_bad_weights(self):
        with pytest.raises(BadParamError):
            FamilyParams(0.5, 0.6, 0, 0, 2, 2)
        with pytest.raises(BadParamError):
            FamilyParams(0.5, 0.5, 0, 0, 3, 2)
        with pytest.raises(BadParamError):
            FamilyParams(-0.1, 1.1, 0, 0, 2, 2)

    def test_block_positive_by_construction(self):
        from ews.blockpos import product_expectation_min

        w = w_family(FamilyParams(0.25, 0.25, 0.25, 0.25, 2, 3))
        opt = product_expectation_min(w.op, restarts=16, seed=0)
        assert opt.value >= -1e-10
        assert w.class_tag == TAG_DEW


class TestPurePtWitness:
    def test_bell_is_floor_attainer(self):
        rep = spectral_report(pure_pt_witness(max_entangled(2, 2)))
        assert abs(rep.lambda_min + 0.5) < 1e-12
        assert rep.all_pass
        assert any(b.name == "lambda_min" and b.attained for b in rep.bounds)

    def test_extremal_tail(self):
        w = pure_pt_witness(pure_from_schmidt([0.92388, 0.382683], 2, 2))
        rep = spectral_report(w)
        assert abs(rep.lambdas[2:].sum() + 1.0 / (2 + 2 * SQRT2)) < 1e-6

    def test_qutrit_bell(self):
        rep = spectral_report(pure_pt_witness(max_entangled(3, 3)))
        expected = np.sort([1 / 3.0] * 6 + [-1 / 3.0] * 3)[::-1]
        assert np.abs(rep.lambdas - expected).max() < 1e-12
        assert abs(rep.negativity - 1.0) < 1e-12

    def test_product_state_rejected(self):
        with pytest.raises(ProductStateError):
            pure_pt_witness(pure_from_schmidt([1.0], 2, 2))

    def test_spectrum_matches_closed_form(self):
        from ews.states import pt_spectrum_pure

        psi = pure_from_schmidt([0.8, 0.6], 2, 4)
        rep = spectral_report(pure_pt_witness(psi))
        assert np.abs(rep.lambdas - pt_spectrum_pure(psi)).max() < 1e-10


class TestSampleDew:
    def test_rejects_pure_positive_mix(self):
        with pytest.raises(BadParamError):
            sample_dew(2, 2, x=1.0, seed=0)

    def test_determinism(self):
        a = sample_dew(2, 3, 0.3, seed=5)
        b = sample_dew(2, 3, 0.3, seed=5)
        assert a.op.mat.tobytes() == b.op.mat.tobytes()

    def test_bounds_hold_on_samples(self):
        for i in range(25):
            w = sample_dew(2, 2, x=0.2, seed=100 + i)
            rep = spectral_report(w)
            if rep.is_ew:
                assert rep.all_pass, [b for b in rep.bounds if not b.passed]

    def test_rank_one_transpose_equals_pure_pt(self):
        w = sample_dew(3, 3, x=0.0, rank_p=1, rank_q=1, seed=17)
        # with x = 0 the sample is exactly PT(Q); recover the pure state
        q = pt_mat(w.op.mat, 3, 3)
        eig = eig_hermitian(q)
        vec = eig.vectors[:, 0]
        rebuilt = pure_pt_witness(PureState.from_vector(vec, 3, 3))
        assert np.abs(rebuilt.op.mat - w.op.mat).max() < 1e-12


class TestSpectralReport:
    def test_psd_flagged_not_ew(self):
        op = canonical_state("max_ball_center", m=2, n=2)
        rep = spectral_report(op)
        assert not rep.is_ew

    def test_near_pure_transpose_is_near_pure_pt_witness(self):
        # a sample with squared Frobenius norm within 1e-6 of the supremum
        # must lie within trace distance 1e-3 of a transposed pure projector
        eta = 1e-7
        psi = pure_from_schmidt([0.8, 0.6], 2, 2)
        mat = (1 - eta) * pt_mat(psi.projector().mat, 2, 2) + eta * np.eye(4) / 4.0
        w = Witness(op=BipartiteOperator(2, 2, mat), class_tag=TAG_DEW)
        rep = spectral_report(w)
        assert rep.fro_sq > 1 - 1e-6
        top = eig_hermitian(pt_mat(w.op.mat, 2, 2)).vectors[:, 0]
        nearest = pure_pt_witness(PureState.from_vector(top, 2, 2))
        gap = eig_hermitian(w.op.mat - nearest.op.mat).values
        assert 0.5 * np.abs(gap).sum() < 1e-3

    def test_qubit_rows_present(self):
        rep = spectral_report(w_family(FamilyParams(0.3, 0.7, 0, 0, 2, 3)))
        names = {b.name for b in rep.bounds}
        assert {"pair_sum", "tail_from_3", "tail_from_4_on"} <= names

    def test_negativity_cap_attained_for_phi_mix(self):
        mix = 0.5 * (
            pt_mat(max_entangled(2, 4, 1).projector().mat, 2, 4)
            + pt_mat(max_entangled(2, 4, 2).projector().mat, 2, 4)
        )
        rep = spectral_report(BipartiteOperator(2, 4, mix))
        assert abs(rep.negativity - 0.5) < 1e-10


class TestMirror:
    def test_scaled_identity(self):
        w = Witness(
            op=canonical_state("max_ball_center", m=2, n=2), class_tag=TAG_DEW
        )
        res = mirror(w, restarts=16, seed=0)
        assert abs(res.mu - 0.25) < 1e-10
        assert res.verdict == "mirror-PSD"
        assert np.abs(res.w_m.mat).max() < 1e-10

    def test_bell_transpose_mirror_is_psd(self):
        res = mirror(pure_pt_witness(max_entangled(2, 2)), restarts=32, seed=1)
        assert abs(res.mu - 0.5) < 1e-8
        assert res.verdict == "mirror-PSD"

    def test_remark_witness(self):
        bell = pure_from_schmidt([2**-0.5] * 2, 2, 2)
        mat = (2.0 / 3.0) * pt_mat(bell.projector().mat, 2, 2)
        mat[0, 0] += 1.0 / 3.0
        w = Witness(op=BipartiteOperator(2, 2, mat), class_tag=TAG_DEW)
        res = mirror(w, restarts=64, seed=2)
        assert abs(res.mu - 2.0 / 3.0) < 1e-8
        assert res.verdict == "mirror-PSD"
        assert eig_hermitian(res.w_m.mat).values[-1] >= -1e-10

    def test_rejects_non_block_positive(self):
        w = Witness(
            op=BipartiteOperator(2, 2, -np.eye(4, dtype=complex) / 4.0),
            class_tag="EW-unclassified",
            normalized=False,
        )
        with pytest.raises(BadParamError):
            mirror(w, restarts=8, seed=3)


class TestNdewFromEdge:
    def test_rho_b_certification(self):
        sigma = canonical_state("rho_b", b=0.9)
        w = ndew_from_edge(sigma, NdewParams(), restarts=64, seed=7)
        assert w.class_tag == TAG_NDEW
        assert w.provenance["epsilon_estimate"] > 1e-7
        expect = float(np.trace(w.op.mat @ sigma.mat).real)
        assert expect < -1e-9
        assert abs(w.op.trace() - 1.0) < 1e-9
        # a witness detecting a PPT state must itself have a negative eigenvalue
        assert eig_hermitian(w.op.mat).values[-1] < -1e-10

    def test_tiles_upb_margin_vanishes(self):
        sigma = tiles_upb_state()
        proj = np.zeros((9, 9), dtype=complex)
        for v in tiles_upb_vectors()[:4]:
            proj += np.outer(v, v.conj())
        with pytest.raises(EpsilonVanishesError):
            ndew_from_edge(
                sigma,
                NdewParams(),
                restarts=32,
                seed=11,
                proj_p=proj,
                proj_q=proj,
            )

    def test_full_rank_rejected(self):
        with pytest.raises(FullRankError):
            ndew_from_edge(
                canonical_state("max_ball_center", m=3, n=3), restarts=8, seed=0
            )

    def test_npt_rejected(self):
        with pytest.raises(NotPPTError):
            ndew_from_edge(max_entangled(3, 3).projector(), restarts=8, seed=0)


@pytest.fixture(scope="module")
def gamma_witness():
    return ndew_from_edge(
        canonical_state("gamma_prime"), NdewParams(), restarts=64, seed=13
    )


class TestBoost:
    def test_zero_weight_identity(self, gamma_witness):
        boosted = boost_witness(gamma_witness, max_entangled(3, 3), t=0.0)
        assert np.abs(boosted.op.mat - gamma_witness.op.mat).max() < 1e-15

    def test_detection_scales_linearly(self, gamma_witness):
        rho = gamma_witness.detected_state
        base = float(np.trace(gamma_witness.op.mat @ rho.mat).real)
        for t in (1.0, 5.0):
            boosted = boost_witness(gamma_witness, max_entangled(3, 3), t=t)
            got = float(np.trace(boosted.op.mat @ rho.mat).real)
            assert abs(got - base / (1 + t)) < 1e-12

    def test_negativity_approaches_cap(self, gamma_witness):
        negs = [
            spectral_report(
                boost_witness(gamma_witness, max_entangled(3, 3), t=t)
            ).negativity
            for t in (1.0, 10.0, 100.0)
        ]
        assert negs[0] < negs[1] < negs[2]
        assert abs(negs[-1] - 1.0) < 0.05

    def test_orthogonality_enforced(self, gamma_witness):
        with pytest.raises(OrthogonalityError):
            boost_witness(gamma_witness, pure_from_schmidt([0.8, 0.6], 3, 3), t=1.0)

    def test_requires_certified_witness(self):
        w = pure_pt_witness(max_entangled(2, 2))
        with pytest.raises(BadParamError):
            boost_witness(w, max_entangled(2, 2), t=1.0)


class TestLocalFilter:
    def test_bell_gives_trivial_filter(self):
        psi = max_entangled(2, 2)
        f = local_filter_to_max_entangled(psi)
        target = kron(f.a, f.b) @ psi.to_vector()  # Psi_2 maps to itself
        assert np.linalg.norm(target - psi.to_vector()) < 1e-9

    def test_diagonal_coefficients(self):
        psi = pure_from_schmidt([0.8, 0.6], 2, 2)
        f = local_filter_to_max_entangled(psi)
        assert np.allclose(np.abs(f.a), np.diag([0.8 * SQRT2, 0.6 * SQRT2]), atol=1e-12)
        assert np.allclose(np.abs(f.b), np.eye(2), atol=1e-12)

    def test_random_states_map_exactly(self):
        rng = np.random.default_rng(23)
        for m, n in ((2, 3), (3, 3), (3, 4)):
            v = rng.standard_normal(m * n) + 1j * rng.standard_normal(m * n)
            v /= np.linalg.norm(v)
            psi = PureState.from_vector(v, m, n)
            f = local_filter_to_max_entangled(psi)
            d = psi.rank
            bell = np.zeros(m * n, dtype=complex)
            for i in range(d):
                bell[i * n + i] = 1 / np.sqrt(d)
            assert np.linalg.norm(kron(f.a, f.b) @ bell - v) < 1e-9
            # invertibility with a finite condition number
            assert np.linalg.cond(f.a) < 1e8
            assert np.linalg.cond(f.b) < 1e8


class TestDetectNpt:
    def test_embedded_bell_two_qutrits(self):
        rho = pure_from_schmidt([2**-0.5] * 2, 3, 3).projector()
        cert = detect_npt(rho, restarts=64, seed=3)
        assert cert.expectation < -1e-9
        assert cert.witness.class_tag == TAG_NDEW
        assert is_ppt(cert.witness.detected_state)
        recheck = float(
            np.trace(cert.witness.op.mat @ cert.witness.detected_state.mat).real
        )
        assert recheck < -1e-9

    def test_qutrit_bell(self):
        cert = detect_npt(max_entangled(3, 3).projector(), restarts=64, seed=3)
        assert cert.expectation < -1e-9
        # the bottom eigenvector of the transposed projector is an
        # antisymmetric pair vector, so the rank-2 branch fires
        assert cert.pipeline["schmidt_rank"] == 2

    def test_qubit_times_four(self):
        rho = pure_from_schmidt([2**-0.5] * 2, 2, 4).projector()
        cert = detect_npt(rho, restarts=64, seed=3)
        assert cert.expectation < -1e-9
        assert cert.pipeline["base"] == "rho_b_flip"

    def test_wishart_battery_uses_rank3_branch(self):
        hits = 0
        for i in range(4):
            rho = random_state("density_wishart", 3, 3, rank=9, seed=2000 + i)
            from ews.states import is_ppt as ppt

            if ppt(rho):
                continue
            cert = detect_npt(rho, restarts=64, seed=9)
            assert cert.expectation < -1e-9
            if cert.pipeline["base"] == "gamma2":
                hits += 1
        assert hits > 0

    def test_ppt_input_rejected(self):
        with pytest.raises(IsPPTError):
            detect_npt(canonical_state("gamma"), restarts=8, seed=0)

    def test_small_system_rejected(self):
        with pytest.raises(BadParamError):
            detect_npt(max_entangled(2, 2).projector(), restarts=8, seed=0)

    def test_wrong_orientation_rejected(self):
        rho = pure_from_schmidt([2**-0.5] * 2, 4, 2).projector()
        with pytest.raises(BadParamError):
            detect_npt(rho, restarts=8, seed=0)


def test_boost_direction_orthogonal_to_bases():
    # the boost carriers pair to zero against their base states, which is
    # what keeps certification alive inside the detection pipeline
    pt2 = pt_mat(pure_from_schmidt([2**-0.5] * 2, 3, 3).projector().mat, 3, 3)
    pt3 = pt_mat(max_entangled(3, 3).projector().mat, 3, 3)
    g1 = canonical_state("gamma1")
    g2 = canonical_state("gamma2")
    assert abs(np.trace(pt2 @ g1.mat).real) < 1e-10
    assert abs(np.trace(pt3 @ g2.mat).real) < 1e-10

    rb = canonical_state("rho_b", b=0.9)
    flip = kron(np.diag([-1.0, 1.0]), np.eye(4))
    sigma = flip @ pt_mat(rb.mat, 2, 4) @ flip
    pt2_24 = pt_mat(pure_from_schmidt([2**-0.5] * 2, 2, 4).projector().mat, 2, 4)
    assert abs(np.trace(pt2_24 @ sigma).real) < 1e-10
    assert eig_hermitian(pt_mat(sigma, 2, 4)).values[-1] >= -1e-10
