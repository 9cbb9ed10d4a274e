import time

import numpy as np
import pytest

from lexsum import lsa
from lexsum.errors import AllConceptsEmpty, ConfigError, EmptyVocabulary, NegativeProbability, RankTooLarge
from lexsum.textcore import ExtractionConfig, build_document, select_diverse

TITLES = [
    'The Neatest Little Guide to Stock Market Investing.',
    'Investing For Dummies, 4th Edition.',
    'The Little Book of Common Sense Investing: The Only Way to Guarantee Your Fair Share of '
    'Stock Market Returns.',
    'The Little Book of Value Investing.',
    'Value Investing: From Graham to Buffett and Beyond.',
    "Rich Dad's Guide to Investing: What the Rich Invest in, That the Poor and the Middle Class, Do Not!",
    'Investing in Real Estate, 5th Edition.',
    'Stock Investing For Dummies.',
    "Rich Dad's Advisors: The ABC's of Real Estate Investing: The Secrets of Finding Hidden Profits "
    'Most Investors Miss.',
]

VOCABULARY = ['book', 'dad', 'dummies', 'estate', 'guide', 'investing', 'market', 'real', 'rich', 'stock', 'value']

TITLE_MATRIX = np.array([
    [0, 0, 1, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0, 1],
    [0, 1, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 1, 0, 1],
    [1, 0, 0, 0, 0, 1, 0, 0, 0],
    [1, 1, 1, 1, 1, 1, 1, 1, 1],
    [1, 0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0, 1],
    [0, 0, 0, 0, 0, 2, 0, 0, 1],
    [1, 0, 1, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 1, 1, 0, 0, 0, 0],
], dtype=float)

# Concept x sentence values, sigma * Vt with rank 3
W_CONCEPTS = np.array([
    [1.368, 0.860, 1.329, 1.016, 0.860, 1.915, 1.094, 1.133, 1.170],
    [-0.835, -0.391, -1.200, -0.626, -0.365, 1.435, -0.182, -0.809, 1.148],
    [-0.82, 0.28, -0.32, 0.5, 0.44, -1.02, 1.1, 0, 0.68],
])

W_SENTENCES = np.array([
    [1.368, 0.860, 1.329, 1.016, 0.860, 1.915, 1.094, 1.133, 1.7204],
    [-0.835, -0.391, -1.200, -0.626, -0.365, -1.435, -0.182, -0.809, 1.148],
    [-0.82, 0.28, -0.32, 0.5, 0.44, -1.02, 1.1, 0, 0.68],
])


def _labels(order):
    return [f'S{i + 1}' for i in order]


@pytest.fixture
def titles():
    return build_document(TITLES, 'titles')


class TestMatrix:
    def test_title_matrix(self, titles):
        start = time.perf_counter()
        m = lsa.build_matrix(titles, ('tf', 'none'), vocabulary=VOCABULARY)
        f = lsa.svd(m, 3)
        assert time.perf_counter() - start < 1.0
        assert m.terms == tuple(VOCABULARY)
        np.testing.assert_array_equal(m.values, TITLE_MATRIX)
        np.testing.assert_allclose(f.sigma, [3.91, 2.61, 2.00], atol=0.01)

    def test_default_vocabulary_is_sorted(self):
        m = lsa.build_matrix([['b', 'a'], ['c', 'a', 'a']], ('tf', 'none'))
        assert m.terms == ('a', 'b', 'c')
        np.testing.assert_array_equal(m.values, [[1, 2], [1, 0], [0, 1]])

    def test_weighting_schemes(self):
        lists = [['a', 'a', 'b'], ['a'], ['c']]
        binary = lsa.build_matrix(lists, ('binary', 'none')).values
        np.testing.assert_array_equal(binary, [[1, 1, 0], [1, 0, 0], [0, 0, 1]])
        log = lsa.build_matrix(lists, ('log', 'none')).values
        assert log[0, 0] == pytest.approx(np.log2(3))
        aug = lsa.build_matrix(lists, ('augnorm', 'none')).values
        assert aug[0, 0] == pytest.approx(1.0)
        assert aug[1, 0] == pytest.approx(0.75)
        assert aug[2, 0] == 0.0
        idf = lsa.build_matrix(lists, ('tf', 'idf')).values
        # log2(3 / (1 + 2)) = 0 for a term in two of three sentences
        np.testing.assert_allclose(idf[0], [0, 0, 0])
        assert idf[1, 0] == pytest.approx(np.log2(1.5))
        gfidf = lsa.build_matrix(lists, ('binary', 'gfidf')).values
        assert gfidf[0, 0] == pytest.approx(1.5)
        normal = lsa.build_matrix(lists, ('tf', 'normal')).values
        assert normal[0, 0] == pytest.approx(2 / np.sqrt(5))
        entropy = lsa.build_matrix(lists, ('tf', 'entropy')).values
        np.testing.assert_allclose(entropy[1:, :], [[1, 0, 0], [0, 0, 1]])
        assert 0 < entropy[0, 0] < 2

    def test_errors(self):
        with pytest.raises(EmptyVocabulary):
            lsa.build_matrix([[], []])
        with pytest.raises(EmptyVocabulary):
            lsa.build_matrix([['a']], vocabulary=['zzz'])
        with pytest.raises(ConfigError):
            lsa.build_matrix([['a']], ('bogus', 'none'))


class TestSvd:
    def test_full_rank_reconstructs(self):
        f = lsa.svd(TITLE_MATRIX, 9)
        np.testing.assert_allclose(f.reconstruct(), TITLE_MATRIX, atol=1e-10)

    def test_sign_convention_and_order(self):
        f = lsa.svd(TITLE_MATRIX, 5)
        assert np.all(np.diff(f.sigma) <= 0)
        for k in range(f.r):
            assert f.U[np.argmax(np.abs(f.U[:, k])), k] > 0

    def test_rank_bounds(self):
        with pytest.raises(RankTooLarge):
            lsa.svd(TITLE_MATRIX, 10)
        with pytest.raises(RankTooLarge):
            lsa.svd(TITLE_MATRIX, 0)
        assert lsa.svd(TITLE_MATRIX).r == 9
        assert lsa.default_rank(40, 30) == 10

    def test_random_matrices_match_eigen_oracle(self):
        rng = np.random.default_rng(77)
        for _ in range(20):
            m, n = rng.integers(3, 13, size=2)
            M = rng.uniform(0.0, 3.0, size=(m, n)) * (rng.random((m, n)) < 0.6)
            r = min(m, n)
            f = lsa.svd(M, r)
            np.testing.assert_allclose(f.reconstruct(), M, atol=1e-9)
            oracle = np.clip(np.linalg.eigvalsh(M.T @ M), 0.0, None)[::-1][:r]
            np.testing.assert_allclose(f.sigma ** 2, oracle, atol=1e-9 * max(oracle[0], 1.0))
            np.testing.assert_allclose(f.U.T @ f.U, np.eye(r), atol=1e-9)


class TestEntropy:
    def test_shannon(self):
        assert lsa.shannon_entropy([0.4848, 0.3235, 0.1916]) == pytest.approx(1.48984, abs=1e-3)
        assert lsa.shannon_entropy([1.0, 0.0]) == 0.0
        with pytest.raises(NegativeProbability):
            lsa.shannon_entropy([0.5, -0.1])

    def test_concept_entropies(self):
        h = lsa.concept_entropies(W_CONCEPTS)
        assert h[2] == pytest.approx(2.17148, abs=2e-3)
        assert h[1] == pytest.approx(0.99152, abs=1e-3)
        assert h[0] > h[2] > h[1]

    def test_lsacs_order(self):
        order = lsa.lsacs_order_from_w(W_CONCEPTS)
        assert _labels(order) == ['S6', 'S1', 'S3', 'S9', 'S8', 'S7', 'S4', 'S2', 'S5']

    def test_lsass_order(self):
        order = lsa.lsass_order_from_w(W_SENTENCES)
        assert _labels(order) == ['S9', 'S7', 'S5', 'S4', 'S2', 'S1', 'S3', 'S6', 'S8']

    def test_lsacs_moves_to_next_concept(self):
        W = np.array([[2.0, 0.0, -1.0], [-1.0, 1.0, 3.0]])
        # Only the second row spreads over two sentences, so it leads
        assert lsa.lsacs_order_from_w(W) == [2, 1, 0]

    @pytest.mark.parametrize('c', [0.01, 3.0, 1000.0])
    def test_scaling_w_keeps_entropy_orders(self, c):
        rng = np.random.default_rng(12)
        for _ in range(10):
            W = rng.normal(size=(int(rng.integers(2, 6)), int(rng.integers(4, 12))))
            W[0] = np.abs(W[0])
            assert lsa.lsacs_order_from_w(W * c) == lsa.lsacs_order_from_w(W)
            assert lsa.lsass_order_from_w(W * c) == lsa.lsass_order_from_w(W)

    def test_all_concepts_empty(self):
        with pytest.raises(AllConceptsEmpty):
            lsa.lsacs_order_from_w(-np.ones((2, 3)))


class TestSelectionModels:
    def test_gong_liu_one_sentence_per_concept(self):
        f = lsa.SvdFactors(U=np.eye(2), sigma=np.array([2.0, 1.0]),
                           Vt=np.array([[0.9, 0.1, 0.5], [0.2, 0.8, 0.1]]))
        assert lsa.model_gong_liu(f, 3) == [0, 1, 2]

    def test_murray_quotas(self):
        assert lsa.murray_quotas([3.0, 1.0], 4) == [3, 1]
        assert sum(lsa.murray_quotas([5.0, 3.0, 2.0], 7)) == 7
        assert lsa.murray_quotas([1.0, 1.0, 1.0], 1) == [1, 0, 0]
        with pytest.raises(ConfigError):
            lsa.murray_quotas([1.0], 0)

    def test_murray_takes_quota_from_each_concept(self):
        f = lsa.SvdFactors(U=np.eye(2), sigma=np.array([3.0, 1.0]),
                           Vt=np.array([[0.9, 0.1, 0.5, 0.4], [0.2, 0.8, 0.1, 0.3]]))
        assert lsa.model_murray(f, 4) == [0, 2, 3, 1]

    def test_budget_sizes_murray_quotas(self):
        sentences = build_document([f'{w} river bank' for w in
                                    ('apple', 'birch', 'cedar', 'daisy', 'elder', 'fern', 'grape', 'hazel',
                                     'iris', 'juniper')]).sentences
        Vt = np.zeros((3, 10))
        Vt[0, :4] = [0.9, 0.8, 0.7, 0.6]
        Vt[1, 4:7] = [0.9, 0.8, 0.7]
        Vt[2, 7:] = [0.9, 0.8, 0.7]
        f = lsa.SvdFactors(U=np.eye(3), sigma=np.array([3.0, 2.0, 1.0]), Vt=Vt)
        assert lsa.murray_quotas(f.sigma, 3) == [2, 1, 0]
        # quotas for ten sentences spend the first three picks on the top concept
        assert lsa.model_murray(f, 10)[:3] == [0, 1, 2]
        summary = lsa.murray_for_budget(f, sentences, ExtractionConfig(budget=9))
        assert summary.order == (0, 1, 4)
        assert summary.word_count == 9
        unbounded = lsa.murray_for_budget(f, sentences, ExtractionConfig())
        assert list(unbounded.order) == lsa.model_murray(f, 10)

    def test_budgeted_murray_summary_uses_its_own_quotas(self, titles):
        cfg = ExtractionConfig(budget=25)
        summary, matrix = lsa.summarize(titles, 'murray', cfg)
        f = lsa.svd(matrix)
        k = len(summary.order)
        assert k >= 1
        assert list(summary.order) == lsa.model_murray(f, k)
        for larger in range(k + 1, len(titles.sentences) + 1):
            assert len(select_diverse(lsa.model_murray(f, larger), titles.sentences, cfg).order) < larger

    def test_cross_preprocess(self):
        np.testing.assert_array_equal(lsa.cross_preprocess([[1.0, 2.0, 3.0]]), [[0.0, 2.0, 3.0]])

    def test_sj_lengths(self):
        f = lsa.SvdFactors(U=np.eye(2), sigma=np.array([2.0, 1.0]),
                           Vt=np.array([[0.6, 0.8], [0.8, -0.6]]))
        np.testing.assert_allclose(lsa.model_sj(f), [np.hypot(1.2, 0.8), np.hypot(1.6, 0.6)])

    def test_topic_strength_is_symmetric(self):
        W = np.array([[1.0, 0.0, 2.0], [0.5, 1.0, 0.0]])
        M = lsa.topic_strength(W)
        np.testing.assert_allclose(M, M.T)
        assert M[0, 1] == pytest.approx(1.5)
        assert M[0, 0] == pytest.approx(6.0)

    def test_min_correlation_alternates(self):
        Vt = np.array([[0.9, 0.1, 0.5, 0.4], [0.2, 0.8, 0.1, 0.3]])
        assert lsa.min_correlation_order(Vt) == [0, 1, 3, 2]

    @pytest.mark.parametrize('model', lsa.MODELS)
    def test_every_model_respects_the_budget(self, titles, model):
        summary, matrix = lsa.summarize(titles, model, ExtractionConfig(theta=0.4, budget=20))
        assert matrix.shape[1] == 9
        assert 0 < summary.word_count <= 20
        assert list(summary.indices) == sorted(summary.indices)

    def test_unknown_model(self, titles):
        with pytest.raises(ConfigError):
            lsa.summarize(titles, 'nope', ExtractionConfig())
