import math
import unittest
import warnings
import src.angle_analysis as angles
import src.graph_catalog as gc
from src.util_tl import AngleError, TowerError, ToolkitError
from tests.shared_test_utils import setUp_ConfigManager, tearDown_ConfigManager, \
    get_forked_system

# 1.143717740 rad
D5_ANGLE = math.acos(math.sqrt(2.) - 1.)

class TestFusionArithmetic(unittest.TestCase):
    def test_chebyshev(self):
        for x in (0., 0.25, 1. / 3., 0.9):
            self.assertEqual(angles.chebyshev_T(0, x), 0.)
            self.assertEqual(angles.chebyshev_T(1, x), 1.)
            self.assertAlmostEqual(angles.chebyshev_T(3, x), 1. - x, delta=1e-15)
            self.assertAlmostEqual(angles.chebyshev_T(5, x), 1. - 3.*x + x*x, delta=1e-15)
        with self.assertRaises(AngleError):
            angles.chebyshev_T(-1, 0.5)

    def test_fusion_dims(self):
        for j in range(20):
            index = 1.1 + 0.15 * j
            dims = angles.fusion_dims(index, 3).dims
            self.assertEqual(len(dims), 4)
            self.assertEqual(dims[0], 1.)
            self.assertAlmostEqual(dims[1], index - 1., delta=1e-12)
            self.assertAlmostEqual(dims[2], index**2 - 3.*index + 1., delta=1e-12)
            self.assertAlmostEqual(1. + 2.*dims[1] + dims[2], index * (index - 1.),
                delta=1e-12)

    def test_fusion_dims_truncated(self):
        fd = angles.fusion_dims(gc.jones_index(8), 10, k=8)
        self.assertEqual(len(fd.dims), 4)
        # V_3 at the edge of the A_7 principal graph
        self.assertGreater(fd.dims[3], 0.)
        with self.assertRaises(AngleError):
            angles.fusion_dims(1., 3)

    def test_fusion_rules(self):
        self.assertEqual(angles.fusion_rules(1, 1), [0, 1, 2])
        self.assertEqual(angles.fusion_rules(2, 1), [1, 2, 3])
        self.assertEqual(angles.fusion_rules(1, 2, k=6), [1])
        with self.assertRaises(AngleError):
            angles.fusion_rules(3, 0, k=6)

    def test_pq_module_dim(self):
        self.assertAlmostEqual(angles.pq_module_dim(3.), 6., delta=1e-12)
        self.assertAlmostEqual(angles.pq_module_dim(2. + math.sqrt(2.)),
            4. + 3.*math.sqrt(2.), delta=1e-12)
        for index in (1., 4., 5.):
            with self.assertRaises(AngleError):
                angles.pq_module_dim(index)

    def test_lambda_chain(self):
        for j in range(1, 20):
            index = 2. + 0.1 * j
            lam = angles.lambda_from_module_dim(index, angles.pq_module_dim(index))
            self.assertAlmostEqual(math.acos(math.sqrt(lam)),
                math.acos(1. / (index - 1.)), delta=1e-12)


class TestClosedForms(unittest.TestCase):
    def test_index_three(self):
        res = angles.angle_closed_form(3.)
        self.assertAlmostEqual(res.angle, math.pi / 3., delta=1e-12)
        self.assertAlmostEqual(res.lam, 0.25, delta=1e-15)
        self.assertEqual(res.method, angles.CLOSED_FORM)
        self.assertFalse(res.degenerate)

    def test_d5_index(self):
        res = angles.angle_closed_form(2. + math.sqrt(2.))
        self.assertAlmostEqual(res.angle, D5_ANGLE, delta=1e-12)
        self.assertAlmostEqual(res.angle, 1.143717740, delta=1e-9)
        self.assertAlmostEqual(angles.angle_closed_form(3.41421356).angle, D5_ANGLE,
            delta=1e-8)

    def test_d5_total_index(self):
        # [M:N] = [M:P][P:N], both intermediate indices 2 + sqrt(2)
        res = angles.angle_ghj(5)
        self.assertAlmostEqual(res.index, 2. + math.sqrt(2.), delta=1e-12)
        self.assertAlmostEqual(res.index, gc.jones_index(8), delta=1e-12)
        self.assertAlmostEqual(res.index**2, 6. + 4. * math.sqrt(2.), delta=1e-12)
        fs = get_forked_system(5, 4)
        self.assertAlmostEqual(fs.tau**-2, 6. + 4. * math.sqrt(2.), delta=1e-9)

    def test_degenerate(self):
        with warnings.catch_warnings(record=True) as w:
            warnings.simplefilter('always')
            res = angles.angle_closed_form(2.)
        self.assertTrue(w)
        self.assertTrue(res.degenerate)
        self.assertEqual(res.angle, 0.)
        self.assertIn('[degenerate]', angles.describe_angle(res))

    def test_out_of_range(self):
        for index in (1., 4., 4.5, 0.5):
            with self.assertRaises(AngleError):
                angles.angle_closed_form(index)

    def test_ghj_matches_closed_form(self):
        for n in range(4, 11):
            res = angles.angle_ghj(n)
            self.assertEqual(res.method, angles.GHJ_FORMULA)
            self.assertAlmostEqual(res.angle,
                angles.angle_closed_form(gc.jones_index(2*n - 2)).angle, delta=1e-12)
        self.assertAlmostEqual(angles.angle_ghj(4).angle, math.pi / 3., delta=1e-12)
        self.assertAlmostEqual(angles.angle_ghj(5).angle, D5_ANGLE, delta=1e-12)
        self.assertAlmostEqual(math.cos(angles.angle_ghj(6).angle),
            1. / ((5. + math.sqrt(5.)) / 2. - 1.), delta=1e-12)
        with self.assertRaises(AngleError):
            angles.angle_ghj(3)

    def test_spectrum_set(self):
        vals = angles.angle_spectrum_set(10)
        self.assertEqual(len(vals), 8)
        self.assertAlmostEqual(vals[0], math.pi / 3., delta=1e-12)
        self.assertAlmostEqual(vals[1], D5_ANGLE, delta=1e-12)
        for a, b in zip(vals[:-1], vals[1:]):
            self.assertLess(a, b)
        self.assertTrue(all(a < math.pi / 2. for a in vals))
        with self.assertRaises(AngleError):
            angles.angle_spectrum_set(2)

    def test_describe(self):
        text = angles.describe_angle(angles.angle_closed_form(3.))
        self.assertTrue(text.startswith('π/3 ≈ 1.047197'))
        self.assertIn('(60 deg)', text)
        self.assertIsNone(angles.pi_fraction(D5_ANGLE))
        self.assertEqual(angles.pi_fraction(math.pi / 2.), 'π/2')
        self.assertEqual(angles.pi_fraction(2. * math.pi / 3.), '2π/3')

    def test_json(self):
        d = angles.result_to_json(angles.angle_closed_form(3.))
        self.assertEqual(list(d.keys()), ['method', 'index', 'tau', 'lambda',
            'angle_rad', 'angle_deg', 'degenerate', 'residuals'])
        self.assertAlmostEqual(d['angle_deg'], 60., delta=1e-9)


class TestNumericAngle(unittest.TestCase):
    def setUp(self):
        setUp_ConfigManager()

    def tearDown(self):
        tearDown_ConfigManager()

    def test_d4_reproduces_pi_over_3(self):
        res = angles.angle_numeric(get_forked_system(4))
        self.assertEqual(res.method, angles.NUMERIC)
        self.assertAlmostEqual(res.angle, math.pi / 3., delta=1e-6)

    def test_d5_expectation_constant(self):
        fs = get_forked_system(5, 4)
        res = angles.angle_numeric(fs)
        c0 = fs.tau / (1. - fs.tau)
        self.assertAlmostEqual(res.angle, D5_ANGLE, delta=1e-6)
        self.assertAlmostEqual(res.lam, c0**2, delta=1e-8)
        self.assertLess(res.residuals['E_Q(x) + c0 y'], 1e-8)
        self.assertLess(res.residuals['E_P(y) + c0 x'], 1e-8)
        self.assertLess(res.residuals['c + c0'], 1e-8)
        # x has operator norm one and tr(x*x) = tau/(1 - tau)
        self.assertLess(res.residuals['norm(x) - 1'], 1e-9)
        self.assertLess(res.residuals['tr(x*x) - c0'], 1e-9)

    def test_matches_ghj(self):
        for n in (4, 5, 6, 7):
            report, res = angles.verify_angle_numeric(get_forked_system(n), tol=1e-6)
            self.assertTrue(report.overall, msg='D{}\n{}'.format(n, report.to_text()))
            self.assertAlmostEqual(res.angle, angles.angle_ghj(n).angle, delta=1e-6)

    def test_bad_level(self):
        fs = get_forked_system(5)
        for level in (1, 6):
            with self.assertRaises(TowerError):
                angles.angle_numeric(fs, level)


class TestBraids(unittest.TestCase):
    def setUp(self):
        setUp_ConfigManager()

    def tearDown(self):
        tearDown_ConfigManager()

    def test_d5_relations(self):
        fs = get_forked_system(5)
        for ext in ('none', 'p', 'q'):
            gens = angles.braid_generators(fs, ext)
            self.assertEqual(len(gens), 4 if ext == 'none' else 5)
            for r in angles.braid_residuals(gens):
                self.assertLess(r, 1e-9)

    def test_verify_braid(self):
        report = angles.verify_braid(get_forked_system(5), tol=1e-9)
        self.assertTrue(report.overall, msg=report.to_text())
        self.assertEqual(len(report.checks), 6)
        self.assertEqual(report.checks[0].name, 'p-extension unitary')

    def test_bad_arguments(self):
        fs = get_forked_system(5)
        with self.assertRaises(TowerError):
            angles.braid_generators(fs, 'p', count=5)
        with self.assertRaises(ToolkitError):
            angles.braid_generators(fs, 'r')
        self.assertEqual(angles.braid_residuals([]), (0., 0., 0.))

if __name__ == '__main__':
    unittest.main()
