import unittest
import collections
import src.verification as verification
import src.path_algebras as pa
import src.graph_catalog as gc
from tests.shared_test_utils import setUp_ConfigManager, tearDown_ConfigManager, \
    get_tower

class TestReport(unittest.TestCase):
    def test_add_and_overall(self):
        report = verification.VerificationReport()
        report.add('small', 1e-12, 1e-9)
        self.assertTrue(report.overall)
        report.add('large', -1e-3, 1e-9)
        self.assertFalse(report.overall)
        self.assertEqual(report.failed(), ['large'])
        self.assertEqual(report.get('large').residual, 1e-3)
        with self.assertRaises(KeyError):
            report.get('missing')

    def test_boundary_fails(self):
        # a residual equal to the tolerance doesn't pass
        report = verification.VerificationReport()
        self.assertFalse(report.add('edge', 1e-9, 1e-9)['pass'])

    def test_evaluate_keeps_order(self):
        checks = [('c{}'.format(i), (lambda i=i: float(i)), 10.) for i in range(6)]
        for parallel in (False, True):
            report = verification.VerificationReport().evaluate(checks, parallel)
            self.assertEqual([c.name for c in report.checks],
                ['c{}'.format(i) for i in range(6)])
            self.assertEqual(report.get('c4').residual, 4.)

    def test_evaluate_propagates(self):
        def boom():
            raise ZeroDivisionError
        with self.assertRaises(ZeroDivisionError):
            verification.VerificationReport().evaluate([('x', boom, 1.)], parallel=True)

    def test_json_and_text(self):
        report = verification.VerificationReport()
        report.add('a', 0., 1e-9)
        report.add('b', 0., 1e-9, note=verification.VACUOUS)
        d = report.to_json(collections.OrderedDict([('graph', 'D5')]))
        self.assertEqual(list(d.keys()), ['system', 'checks', 'overall'])
        self.assertNotIn('note', d['checks'][0])
        self.assertEqual(d['checks'][1]['note'], 'vacuous')
        self.assertTrue(d['overall'])
        text = report.to_text()
        self.assertIn('(vacuous)', text)
        self.assertTrue(text.endswith('overall: PASS'))

    def test_extend_prefix(self):
        sub = verification.VerificationReport()
        sub.add('x', 0., 1.)
        report = verification.VerificationReport().extend(sub, 'p-sequence: ')
        self.assertEqual(report.checks[0].name, 'p-sequence: x')

    def test_words(self):
        ws = list(verification.words(2, 2))
        self.assertEqual(ws, [(), (1,), (2,), (1, 1), (1, 2), (2, 1), (2, 2)])


class TestVerifyTL(unittest.TestCase):
    def setUp(self):
        setUp_ConfigManager()

    def tearDown(self):
        tearDown_ConfigManager()

    def test_ade_towers_pass(self):
        for name, star in (('A5', None), ('D5', gc.TRIVALENT), ('E6', None), ('D6', None)):
            tower = get_tower(name, 4, star)
            report = verification.verify_tl(tower, 1e-9)
            self.assertTrue(report.overall, msg='{}\n{}'.format(name, report.to_text()))
            names = [c.name for c in report.checks]
            self.assertIn('e1 e2 e1 = tau e1', names)
            self.assertIn('e1 e3 commute', names)
            self.assertIn('Markov e3', names)
            self.assertIn('embed multiplicative', names)

    def test_depth_one(self):
        tower = get_tower('A3', 1)
        report = verification.verify_tl(tower, 1e-9)
        self.assertTrue(report.overall)
        self.assertEqual(report.checks[0].note, verification.VACUOUS)

    def test_seeded_reports_repeat(self):
        tower = get_tower('A4', 3)
        a = verification.verify_tl(tower, 1e-9, seed=5).to_json()
        b = verification.verify_tl(tower, 1e-9, seed=5).to_json()
        self.assertEqual(a, b)

    def test_mutated_adjacency_fails(self):
        # D5 path bases carrying the Perron-Frobenius data of A5, vertex by
        # vertex in canonical order
        tower = get_tower('D5', 4)
        wrong = gc.spectral_data(gc.build_graph('A5'))
        bad = pa.Tower(tower.graph, wrong._replace(weights=collections.OrderedDict(
            zip(tower.graph.vertices, wrong.weights.values()))),
            tower.depth, tower.levels)
        report = verification.verify_tl(bad, 1e-9)
        self.assertFalse(report.overall)
        self.assertIn('e3 idempotent', report.failed())
        self.assertNotIn('e1 idempotent', report.failed())

if __name__ == '__main__':
    unittest.main()
