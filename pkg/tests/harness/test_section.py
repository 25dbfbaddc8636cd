

import unittest

from fracdiff.harness.config import sections
from fracdiff.harness.config.parameter import Parameter
from fracdiff.harness.config.section import Section
from fracdiff.harness.errors import ParameterNotFound, RestrictedValue, SectionNotFound


class TestSection(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        pass

    @classmethod
    def tearDownClass(cls):
        pass

    def setUp(self):
        self.section_grid = Section(
            name="grid",
            parameters=[
                Parameter(
                    name="dt",
                    value="0.001",
                ),
                Parameter(
                    name="count",
                    value="4001",
                ),
            ]
        )

        self.section_grid_duplicates = Section(
            name="grid",
            parameters=[
                Parameter(
                    name="dt",
                    value="0.001",
                ),
                Parameter(
                    name="count",
                    value="4001",
                ),
                Parameter(
                    name="count",
                    value="4001",
                ),
            ]
        )

        self.section_runs = sections.runs()
        self.section_runs.subsections.append(
            sections.run(config={"kind": "minimal", "alpha": "0.5", "T": "0.25"})
        )

    def tearDown(self):
        pass

    def test_text___parameters___text_matches_expected(self):
        self.assertEqual(
            self.section_grid.text,
            '<grid>\n    <dt>0.001</dt>\n    <count>4001</count>\n</grid>'
        )

    def test_text___subsections___indented(self):
        self.assertEqual(
            self.section_runs.text,
            '<runs>\n'
            '    <run>\n'
            '        <k>0</k>\n'
            '        <mu>0</mu>\n'
            '        <window>forward</window>\n'
            '        <kind>minimal</kind>\n'
            '        <alpha>0.5</alpha>\n'
            '        <T>0.25</T>\n'
            '    </run>\n'
            '</runs>'
        )

    def test_text___attributes_only___text_matches_expected(self):
        self.assertEqual(
            sections.signal().text,
            '<signal name="exp_sin">\n</signal>'
        )

    def test_getattr___parameter_and_subsection___returned(self):
        self.assertEqual(self.section_grid.dt.value, "0.001")
        self.assertIs(self.section_runs.run, self.section_runs.subsections[0])
        with self.assertRaises(AttributeError):
            self.section_grid.t_start

    def test_repr___matches_expected(self):
        self.assertEqual(repr(self.section_grid), 'Section("grid")')

    def test_get___missing_with_default___default(self):
        self.assertEqual(self.section_grid.get("count"), "4001")
        self.assertEqual(self.section_grid.get("t_start", "0"), "0")

    def test_get_parameter___missing___raises_ParameterNotFound(self):
        with self.assertRaises(ParameterNotFound) as context:
            self.section_grid.get_parameter("t_start")
        self.assertEqual(context.exception.field, "grid/t_start")

    def test_set___existing___replaced_in_place(self):
        self.section_grid.set("dt", "0.002")
        self.assertEqual(self.section_grid.get_parameter_names(), ["dt", "count"])
        self.assertEqual(self.section_grid.get("dt"), "0.002")

    def test_set___new___appended(self):
        self.section_grid.set("t_start", "0")
        self.assertEqual(self.section_grid.get_parameter_names(), ["dt", "count", "t_start"])

    def test_set___restricted_parameter_outside_values___raises_RestrictedValue(self):
        run = sections.run()
        with self.assertRaises(RestrictedValue):
            run.set("kind", "cubic")
        with self.assertRaises(RestrictedValue):
            run.set("window", "centred")

    def test_add_parameter___replace_duplicates___single_parameter(self):
        self.section_grid_duplicates.add_parameter(Parameter(name="count", value="11"))
        self.assertEqual(self.section_grid_duplicates.get_parameter_names(), ["dt", "count"])
        self.assertEqual(self.section_grid_duplicates.count.value, "11")

    def test_add_parameter___no_replace___appended(self):
        self.section_grid.add_parameter(Parameter(name="dt", value="0.5"), replace=False)
        self.assertEqual(self.section_grid.get_parameter_names(), ["dt", "count", "dt"])

    def test_add_parameter___not_a_parameter___raises_TypeError(self):
        with self.assertRaises(TypeError):
            self.section_grid.add_parameter("dt")

    def test_remove_parameter___str_with_duplicates___all_removed(self):
        self.section_grid_duplicates.remove_parameter("count")
        self.assertEqual(self.section_grid_duplicates.get_parameter_names(), ["dt"])

    def test_remove_parameter___instance___removed(self):
        self.section_grid.remove_parameter(self.section_grid.dt)
        self.assertEqual(self.section_grid.get_parameter_names(), ["count"])

    def test_remove_parameter___missing___raises_ParameterNotFound(self):
        with self.assertRaises(ParameterNotFound):
            self.section_grid.remove_parameter("t_start")
        with self.assertRaises(ParameterNotFound):
            self.section_grid.remove_parameter(Parameter(name="dt", value="0.001"))

    def test_remove_parameter___wrong_type___raises_TypeError(self):
        with self.assertRaises(TypeError):
            self.section_grid.remove_parameter(1)

    def test_get_subsection___missing___raises_SectionNotFound(self):
        self.assertEqual(self.section_runs.get_subsection("run").get("alpha"), "0.5")
        with self.assertRaises(SectionNotFound):
            self.section_runs.get_subsection("grid")

    def test_defaults___reference_run_output___present(self):
        self.assertEqual(
            [(p.name, p.value) for p in sections.reference().parameters],
            [("h_divisor", "10"), ("tolerance", "0.001"), ("startup", "0.5")]
        )
        self.assertEqual(sections.run().get_parameter_names(), ["k", "mu", "window"])
        self.assertEqual(sections.output().get("directory"), "fracdiff_output")


if __name__ == "__main__":
    unittest.main()
