import json
import logging
import sys
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from algebra.exceptions import ArgumentError
from jobs.forms import COMMANDS, JobConfigForm
from jobs.runner import run
from jobs.serializers import ReportSerializer

logger = logging.getLogger(__name__)

# Flag -> job parameter. Flags win over params, params over settings.DYNAMICS.
FLAGS = {
    "precision_bits": "--precision-bits",
    "iter_budget": "--iter-budget",
    "bidegree": "--bidegree",
    "orbit_len": "--orbit-len",
    "nmax": "--nmax",
    "jet_order": "--jet-order",
    "e_max": "--e-max",
    "iterate_bound": "--iterate-bound",
}


def load_config(path):
    """
    Read a JSON job configuration.

    :param path: Path to the file.
    :return: The decoded object.
    :raises CommandError: With line and column when the JSON is malformed.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CommandError(f"cannot read {path}: {exc.strerror}", returncode=1) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CommandError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}", returncode=1) from exc
    if not isinstance(data, dict):
        raise CommandError(f"{path}: a job configuration is a JSON object", returncode=1)
    return data


def validate(command, data):
    """
    The JobConfig of `data` run as `command`.

    :raises ArgumentError: Listing every validation message.
    """
    form = JobConfigForm(data={**data, "command": command})
    if not form.is_valid():
        messages = [f"{name}: {error}" for name, errors in form.errors.items() for error in errors]
        raise ArgumentError("invalid job configuration: " + "; ".join(messages))
    return form.job()


class Command(BaseCommand):
    help = "Run a dynamics job from a JSON configuration and emit a JSON report."

    def add_arguments(self, parser):
        parser.add_argument("command", choices=COMMANDS)
        parser.add_argument("config", help="Path to the JSON job configuration.")
        for key, flag in FLAGS.items():
            parser.add_argument(flag, dest=key, type=int)
        parser.add_argument("--output", help="Write the report here instead of standard output.")
        parser.add_argument("--workers", type=int, help="Items run concurrently.")
        parser.add_argument("--comparison", action="store_true", help="Omit timings from the report.")

    def handle(self, *args, **options):
        data = load_config(options["config"])
        if "command" in data and data["command"] != options["command"]:
            raise CommandError(
                f"configuration is for {data['command']!r}, not {options['command']!r}", returncode=1
            )
        try:
            job = validate(options["command"], data)
        except ArgumentError as exc:
            raise CommandError(exc.message, returncode=1) from exc
        job.params.update({key: options[key] for key in FLAGS if options.get(key) is not None})
        report = run(job, options.get("workers"), options["comparison"] or None)
        text = json.dumps(ReportSerializer(report).data, indent=2, ensure_ascii=False)
        output = options.get("output") or job.output
        if output:
            Path(output).write_text(text + "\n", encoding="utf-8")
            logger.info("%s report written to %s", job.command, output)
        else:
            self.stdout.write(text)
        if report.exit_code:
            sys.exit(report.exit_code)
