"""Sudden-capability survey of random X states."""

import logging

from discordlab.commands.command import Command
from discordlab.records import RecordFile, sibling_path
from discordlab.transitions import random_survey

logger = logging.getLogger(__name__)


class SurveyCommand(Command):
    """Write the survey counts to --out and the constraint-gap histogram beside it"""

    def run(self) -> list[str]:
        cfg = self.config
        self.report = random_survey(
            cfg.n, cfg.sample_seed, cfg.tolerance_set.sudden, workers=cfg.workers
        )
        histogram_out = sibling_path(self.out, "histogram")
        RecordFile(self.out, "survey").save([self.report.as_row()])
        edges = self.report.bin_edges
        RecordFile(histogram_out, "histogram").save(
            {"log10_gap_lo": lo, "log10_gap_hi": hi, "count": count}
            for lo, hi, count in zip(edges[:-1], edges[1:], self.report.histogram)
        )
        return [self.out, histogram_out]

    def summary(self) -> str:
        row = self.report.as_row()
        return "\n".join(f"{key + ':':<18}{value:>10}" for key, value in row.items())
