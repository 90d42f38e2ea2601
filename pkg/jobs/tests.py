import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from .forms import JobConfigForm
from .runner import ERROR, OK, UNDECIDED, exit_code, run
from .serializers import ReportSerializer

EXAMPLE_PAIRS = {
    "field": "Q",
    "systems": {"f": [0, "1/2", 1], "g": [0, "3/8", 1]},
    "pairs": [{"system": "f", "point": "1/16", "label": "a"}, {"system": "g", "point": "1/16", "label": "b"}],
}

ESCAPING = {
    "systems": {"f": [1, 0, 1]},
    "pairs": [{"system": "f", "point": "1"}, {"system": "f", "point": "2"}],
}

PLANES = {
    "systems": {
        "rotation": {"f1": [[2, 0, "1"], [0, 2, "-1"]], "f2": [[1, 1, "2"]]},
        "mixed": {"f1": [[2, 0, "1"], [0, 1, "1"]], "f2": [[0, 2, "1"], [1, 0, "1"]]},
    },
}


def job(command, config, **params):
    data = {**config, "command": command}
    if params:
        data["params"] = {**config.get("params", {}), **params}
    form = JobConfigForm(data=data)
    if not form.is_valid():
        raise AssertionError(form.errors.as_json())
    return form.job()


class JobConfigTests(SimpleTestCase):
    def test_round_trip(self):
        first = job("equiv", {**EXAMPLE_PAIRS, **PLANES, "systems": {**EXAMPLE_PAIRS["systems"], **PLANES["systems"]}}, orbit_len=60)
        canonical = first.canonical()
        second = job(canonical["command"], canonical)
        self.assertEqual(second.canonical(), canonical)
        self.assertEqual(canonical["systems"]["f"], ["0", "1/2", "1"])
        self.assertEqual(canonical["pairs"][0]["point"], "1/16")

    def test_unknown_keys_are_rejected(self):
        self.assertFalse(JobConfigForm(data={"command": "height", "bogus": 1}).is_valid())
        self.assertFalse(JobConfigForm(data={"command": "height", "params": {"speed": 3}}).is_valid())

    def test_inexact_and_dangling_input(self):
        self.assertFalse(JobConfigForm(data={"command": "height", "systems": {"f": [0.5, 0, 1]}}).is_valid())
        dangling = {"command": "height", "systems": {"f": [1, 0, 1]}, "pairs": [{"system": "g", "point": "1"}]}
        self.assertFalse(JobConfigForm(data=dangling).is_valid())
        self.assertFalse(JobConfigForm(data={"command": "height", "params": {"place": "5:split0"}}).is_valid())

    def test_params_are_typed(self):
        self.assertFalse(JobConfigForm(data={"command": "height", "params": {"nmax": "6"}}).is_valid())
        self.assertFalse(JobConfigForm(data={"command": "height", "params": {"nmax": True}}).is_valid())

    def test_unknown_command(self):
        self.assertFalse(JobConfigForm(data={"command": "plot"}).is_valid())


class RunnerTests(SimpleTestCase):
    def test_exit_code_precedence(self):
        self.assertEqual(exit_code([]), 0)
        self.assertEqual(exit_code([OK, UNDECIDED]), 2)
        self.assertEqual(exit_code([UNDECIDED, ERROR, OK]), 1)

    def test_height_of_the_example_pairs(self):
        report = run(job("height", EXAMPLE_PAIRS), comparison=True)
        self.assertEqual(report.exit_code, 0)
        self.assertEqual([item.key for item in report.items], ["a", "b"])
        for item in report.items:
            self.assertEqual(item.result["finite"], {"2": "4"})
        self.assertIsNone(report.timing)

    def test_short_orbit_is_an_argument_error(self):
        report = run(job("equiv", ESCAPING, bidegree=6, orbit_len=10))
        self.assertEqual(report.exit_code, 1)
        self.assertEqual(report.items[0].status, ERROR)
        self.assertEqual(report.items[0].error["kind"], "argument")

    def test_exhausted_budget_is_undecided(self):
        report = run(job("green", ESCAPING, place="inf", iter_budget=0))
        self.assertEqual(report.exit_code, 2)
        self.assertEqual(report.items[0].result[0]["status"], "UndecidedWithinBudget")
        self.assertTrue(report.warnings)
        self.assertIsNotNone(report.timing)

    def test_per_item_preconditions(self):
        config = {"systems": {"f": [1, 0, 1], "sq": [0, 0, 1]}, "pairs": [{"system": "sq", "point": "2"}]}
        report = run(job("transcend-bottcher", config))
        self.assertEqual(report.exit_code, 1)
        self.assertEqual(report.items[0].error["kind"], "precondition")

    def test_classify(self):
        report = run(job("classify", {"systems": {"cheb": [-2, 0, 1], "f": [1, 0, 1]}}))
        self.assertEqual([item.key for item in report.items], ["cheb", "f"])
        self.assertEqual(report.items[0].result["kind"], "MonomialType")
        self.assertEqual(report.items[1].result["kind"], "Nonexceptional")

    def test_plane_homogeneity(self):
        report = run(job("plane-homogeneity", PLANES))
        statuses = {item.key: item.result["status"] for item in report.items}
        self.assertEqual(statuses, {"mixed": "NotHomogeneous", "rotation": "Homogeneous"})
        self.assertEqual(report.exit_code, 0)

    def test_plane_diagnostics(self):
        report = run(job("diagnostics", {"systems": {"rotation": PLANES["systems"]["rotation"]}}, nmax=2))
        self.assertEqual([row["count"] for row in report.items[0].result], [3, 5])

    def test_comparison_mode_is_deterministic(self):
        config = job("plane-analyze", PLANES, nmax=2)
        first = json.dumps(ReportSerializer(run(config, max_workers=4, comparison=True)).data)
        second = json.dumps(ReportSerializer(run(config, max_workers=1, comparison=True)).data)
        self.assertEqual(first, second)
        self.assertNotIn("timing", json.loads(first))


class CommandTests(SimpleTestCase):
    def write(self, text):
        handle = tempfile.NamedTemporaryFile("w", suffix=".json", delete=False, encoding="utf-8")
        handle.write(text)
        handle.close()
        self.addCleanup(Path(handle.name).unlink)
        return handle.name

    def test_height_report_on_stdout(self):
        out = StringIO()
        call_command("dynamics", "height", self.write(json.dumps(EXAMPLE_PAIRS)), comparison=True, stdout=out)
        report = json.loads(out.getvalue())
        self.assertEqual(report["exit_code"], 0)
        self.assertEqual(report["config"]["command"], "height")
        self.assertEqual(report["items"][1]["result"]["finite"], {"2": "4"})

    def test_flags_win_over_params(self):
        config = {**ESCAPING, "params": {"place": "inf", "iter_budget": 64}}
        with self.assertRaises(SystemExit) as raised:
            call_command("dynamics", "green", self.write(json.dumps(config)), iter_budget=0, stdout=StringIO())
        self.assertEqual(raised.exception.code, 2)

    def test_parse_error_reports_position(self):
        with self.assertRaisesMessage(CommandError, "line 2, column"):
            call_command("dynamics", "height", self.write('{"systems":\n  {"f": [1, 0, 1],}}'))

    def test_invalid_configuration(self):
        with self.assertRaises(CommandError) as error:
            call_command("dynamics", "height", self.write(json.dumps({"systems": {}, "colour": "red"})))
        self.assertIn("colour", str(error.exception))
        self.assertEqual(error.exception.returncode, 1)

    def test_report_file(self):
        target = Path(tempfile.mkdtemp()) / "report.json"
        self.addCleanup(target.unlink, missing_ok=True)
        call_command(
            "dynamics", "classify", self.write(json.dumps({"systems": {"f": [1, 0, 1]}})), output=str(target), stderr=StringIO()
        )
        self.assertEqual(json.loads(target.read_text(encoding="utf-8"))["items"][0]["key"], "f")
