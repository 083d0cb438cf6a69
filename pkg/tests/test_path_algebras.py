import math
import unittest
import numpy as np
import src.path_algebras as pa
import src.graph_catalog as gc
from src import verification
from src import forked_tl
from src.util_tl import TowerError, SubalgebraOverflowError, BasisError
from tests.shared_test_utils import setUp_ConfigManager, tearDown_ConfigManager, \
    get_tower

class TestTower(unittest.TestCase):
    def setUp(self):
        setUp_ConfigManager()

    def tearDown(self):
        tearDown_ConfigManager()

    def test_d5_trivalent_dimensions(self):
        tower = get_tower('D5', 5, star=gc.TRIVALENT)
        dims = [tower.dimension(m) for m in range(4)]
        self.assertEqual(dims, [1, 3, 10, 34])
        self.assertEqual(tower.block_sizes(2), {'c1': 1, 'c3': 3})

    def test_d5_default_star(self):
        tower = get_tower('D5', 3)
        self.assertEqual([tower.dimension(m) for m in range(4)], [1, 1, 2, 6])

    def test_a2(self):
        tower = get_tower('A2', 2)
        self.assertEqual(tower.dimension(2), 1)
        self.assertEqual(tower.paths(2, 'a1'), [('a1', 'a2', 'a1')])

    def test_path_order(self):
        tower = get_tower('D5', 5, star=gc.TRIVALENT)
        self.assertEqual(tower.paths(2, 'c3'),
            [('c3', 'c2', 'c3'), ('c3', 'f1', 'c3'), ('c3', 'f2', 'c3')])

    def test_bad_depth(self):
        g = gc.build_graph('A3')
        with self.assertRaises(TowerError):
            pa.build_tower(g, 0)
        with self.assertRaises(TowerError):
            pa.build_tower(gc.build_graph('D6', star=gc.TRIVALENT), 8, max_entries=100)
        with self.assertRaises(TowerError):
            pa.build_tower(gc.build_graph('A1'), 2)

    def test_check_level(self):
        tower = get_tower('A3', 3)
        with self.assertRaises(TowerError):
            tower.paths(4, 'a1')
        with self.assertRaises(TowerError):
            pa.identity(tower, -1)

    def test_json_and_dot(self):
        tower = get_tower('A3', 3)
        d = pa.tower_to_json(tower)
        self.assertEqual(d['graph'], 'A3')
        self.assertEqual([lvl['dim'] for lvl in d['levels']], [1, 1, 2, 4])
        dot = pa.bratteli_to_dot(tower)
        self.assertIn('"0:a1" -> "1:a2";', dot)
        self.assertIn('"2:a3" [label="a3 (1)"];', dot)


class TestMultiMatrix(unittest.TestCase):
    def setUp(self):
        setUp_ConfigManager()
        self.tower = get_tower('D5', 5, star=gc.TRIVALENT)
        self.rng = np.random.default_rng(1)

    def tearDown(self):
        tearDown_ConfigManager()

    def test_trace_of_identity(self):
        for m in range(self.tower.depth + 1):
            self.assertAlmostEqual(pa.markov_trace(pa.identity(self.tower, m)), 1.,
                delta=1e-12)

    def test_arithmetic(self):
        x = pa.random_element(self.tower, 3, self.rng)
        y = pa.random_element(self.tower, 3, self.rng)
        self.assertLess(((x + y) - y - x).norm(), 1e-12)
        self.assertLess((2. * x - x * 2.).norm(), 1e-12)
        self.assertLess((np.float64(2.) * x - (x + x)).norm(), 1e-12)
        self.assertLess((x / 2. + x / 2. - x).norm(), 1e-12)
        self.assertLess((-x + x).norm(), 1e-12)
        self.assertLess((x.dot(y).adjoint() - y.adjoint().dot(x.adjoint())).norm(), 1e-10)

    def test_mismatch(self):
        x = pa.identity(self.tower, 2)
        with self.assertRaises(TowerError):
            _ = x + pa.identity(self.tower, 3)
        other = get_tower('D5', 4, star=gc.TRIVALENT)
        with self.assertRaises(TowerError):
            x.dot(pa.identity(other, 2))
        with self.assertRaises(TypeError):
            _ = x * x

    def test_block_shape(self):
        with self.assertRaises(TowerError):
            pa.MultiMatrix(self.tower, 1, {'c2': np.eye(2), 'f1': np.eye(1), 'f2': np.eye(1)})

    def test_vectorize_inner_product(self):
        x = pa.random_element(self.tower, 3, self.rng)
        y = pa.random_element(self.tower, 3, self.rng)
        self.assertAlmostEqual(pa.trace_inner(x, y),
            pa.markov_trace(y.adjoint().dot(x)), delta=1e-10)
        z = pa.MultiMatrix.from_vector(self.tower, 3, x.vectorize())
        self.assertLess((z - x).norm(), 1e-12)

    def test_diagonal_projection(self):
        p = pa.diagonal_projection(self.tower, 1, lambda path: path[1] == 'f1')
        self.assertLess((p.dot(p) - p).norm(), 1e-12)
        self.assertAlmostEqual(pa.markov_trace(p), self.tower.tau, delta=1e-12)


class TestEmbedding(unittest.TestCase):
    def setUp(self):
        setUp_ConfigManager()
        self.tower = get_tower('E6', 4)
        self.rng = np.random.default_rng(7)

    def tearDown(self):
        tearDown_ConfigManager()

    def test_embed_properties(self):
        for m in range(self.tower.depth):
            x = pa.random_element(self.tower, m, self.rng)
            y = pa.random_element(self.tower, m, self.rng)
            ex, ey = pa.embed(x, m + 1), pa.embed(y, m + 1)
            self.assertAlmostEqual(pa.markov_trace(ex), pa.markov_trace(x), delta=1e-10)
            self.assertLess((pa.embed(x.dot(y), m + 1) - ex.dot(ey)).norm(), 1e-10)
            self.assertLess((pa.embed(pa.identity(self.tower, m), m + 1) \
                - pa.identity(self.tower, m + 1)).norm(), 1e-12)

    def test_embed_composes(self):
        x = pa.random_element(self.tower, 1, self.rng)
        self.assertLess((pa.embed(pa.embed(x, 2), 4) - pa.embed(x, 4)).norm(), 1e-12)
        self.assertEqual(pa.embed(x, 1).level, 1)

    def test_embed_down(self):
        x = pa.identity(self.tower, 3)
        with self.assertRaises(TowerError):
            pa.embed(x, 2)
        with self.assertRaises(TowerError):
            pa.embed(x, 5)


class TestJonesProjections(unittest.TestCase):
    def setUp(self):
        setUp_ConfigManager()

    def tearDown(self):
        tearDown_ConfigManager()

    def test_relations(self):
        tower = get_tower('D5', 5, star=gc.TRIVALENT)
        tau = tower.tau
        es = pa.jones_projections(tower, 4, 5)
        for e in es:
            self.assertLess((e.dot(e) - e).norm(), 1e-12)
            self.assertLess((e.adjoint() - e).norm(), 1e-12)
            self.assertAlmostEqual(pa.markov_trace(e), tau, delta=1e-12)
        for a, b in zip(es[:-1], es[1:]):
            self.assertLess((a.dot(b).dot(a) - tau * a).norm(), 1e-12)
        self.assertLess((es[0].dot(es[2]) - es[2].dot(es[0])).norm(), 1e-12)

    def test_out_of_range(self):
        tower = get_tower('A4', 3)
        with self.assertRaises(TowerError):
            pa.jones_projection_matrix(tower, 3)
        with self.assertRaises(TowerError):
            pa.jones_projection_matrix(tower, 0)

    def test_word_matrix(self):
        tower = get_tower('A4', 3)
        w = pa.word_matrix(tower, (1, 2), 3)
        self.assertAlmostEqual(pa.markov_trace(w), tower.tau**2, delta=1e-12)
        self.assertLess((pa.word_matrix(tower, (), 3) - pa.identity(tower, 3)).norm(), 1e-12)

    def test_diagram_oracle(self):
        # A_n at the end vertex against TL with delta = 2cos(pi/(n+1))
        for n in (4, 5, 6, 7):
            tower = get_tower('A{}'.format(n), 5)
            self.assertAlmostEqual(tower.beta, 2. * math.cos(math.pi / (n + 1)), delta=1e-9)
            report = verification.oracle_checks(verification.VerificationReport(),
                tower, 4, 6, 1e-9)
            self.assertTrue(report.overall, msg=report.to_text())


class TestSubalgebras(unittest.TestCase):
    def setUp(self):
        setUp_ConfigManager()
        self.tower = get_tower('A4', 4)
        self.rng = np.random.default_rng(3)

    def tearDown(self):
        tearDown_ConfigManager()

    def test_no_generators(self):
        basis = pa.generated_subalgebra([], level=3, tower=self.tower)
        self.assertEqual(len(basis), 1)
        self.assertAlmostEqual(pa.trace_inner(basis[0], basis[0]), 1., delta=1e-12)
        with self.assertRaises(TowerError):
            pa.generated_subalgebra([])

    def test_jones_generate_everything(self):
        # on A_n the string algebra is the Temperley-Lieb algebra
        gens = pa.jones_projections(self.tower, 3, 4)
        basis = pa.generated_subalgebra(gens)
        self.assertEqual(len(basis), self.tower.dimension(4))

    def test_single_projection(self):
        gens = pa.jones_projections(self.tower, 1, 3)
        self.assertEqual(len(pa.generated_subalgebra(gens)), 2)

    def test_orthonormal(self):
        basis = pa.generated_subalgebra(pa.jones_projections(self.tower, 2, 3))
        mat = np.array([[pa.trace_inner(a, b) for b in basis] for a in basis])
        self.assertLess(np.max(np.abs(mat - np.eye(len(basis)))), 1e-10)

    def test_overflow(self):
        gens = pa.jones_projections(self.tower, 3, 4)
        with self.assertRaises(SubalgebraOverflowError):
            pa.generated_subalgebra(gens, cap=3)

    def test_conditional_expectation(self):
        es = pa.jones_projections(self.tower, 2, 4)
        basis = pa.generated_subalgebra(es)
        x = pa.random_element(self.tower, 4, self.rng)
        ex = pa.conditional_expectation(basis, x)
        # idempotent, trace preserving, fixes B and is B-bilinear
        self.assertLess((pa.conditional_expectation(basis, ex) - ex).norm(), 1e-10)
        self.assertAlmostEqual(pa.markov_trace(ex), pa.markov_trace(x), delta=1e-10)
        for b in basis:
            self.assertLess((pa.conditional_expectation(basis, b) - b).norm(), 1e-10)
        a, c = es[0], es[1]
        lhs = pa.conditional_expectation(basis, a.dot(x).dot(c))
        self.assertLess((lhs - a.dot(ex).dot(c)).norm(), 1e-9)

    def test_basis_check_ignores_check_tolerance(self):
        setUp_ConfigManager(tolerance=1e-300)
        basis = pa.generated_subalgebra(pa.jones_projections(self.tower, 3, 4))
        x = pa.random_element(self.tower, 4, self.rng)
        ex = pa.conditional_expectation(basis, x)
        self.assertLess((ex - x).norm(), 1e-8)

    def test_bad_basis(self):
        one = pa.identity(self.tower, 2)
        with self.assertRaises(BasisError):
            pa.conditional_expectation([2. * one], one)
        with self.assertRaises(BasisError):
            pa.conditional_expectation([], one)


class TestForkedSubalgebras(unittest.TestCase):
    def setUp(self):
        setUp_ConfigManager()
        self.tower = get_tower('D5', 4, star=gc.TRIVALENT)
        self.rng = np.random.default_rng(11)

    def tearDown(self):
        tearDown_ConfigManager()

    def test_p_e1_dimension(self):
        # p and e_1 are rank one in the 3x3 block at the trivalent vertex:
        # they generate M_2 there, plus the unit
        p, _ = forked_tl.fork_projections(self.tower, 2)
        basis = pa.generated_subalgebra([p] + pa.jones_projections(self.tower, 1, 2))
        self.assertEqual(len(basis), 5)

    def _stability_residual(self, extra, m):
        def gens(level):
            return list(extra(level)) + pa.jones_projections(self.tower, level - 1, level)
        x = pa.random_element(self.tower, m, self.rng)
        low = pa.conditional_expectation(pa.generated_subalgebra(gens(m)), x)
        high = pa.conditional_expectation(pa.generated_subalgebra(gens(m + 1)),
            pa.embed(x, m + 1))
        return (pa.embed(low, m + 1) - high).norm()

    def test_commuting_square_stability(self):
        for m in (2, 3):
            self.assertLess(self._stability_residual(lambda level: [], m), 1e-8, msg=m)
            q_only = lambda level: [forked_tl.fork_projections(self.tower, level)[1]]
            self.assertLess(self._stability_residual(q_only, m), 1e-8, msg=m)

if __name__ == '__main__':
    unittest.main()
