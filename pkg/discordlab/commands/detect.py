"""Sudden-versus-continuous classification of optimal-basis changes."""

import logging
from dataclasses import asdict

from discordlab.commands.command import Command
from discordlab.commands.evolve import trajectory_rows
from discordlab.records import RecordFile, sibling_path
from discordlab.transitions import KIND, detect_transitions

logger = logging.getLogger(__name__)


class DetectCommand(Command):
    """Write the refined trajectory to --out and the events to <out>.events.csv"""

    def run(self) -> list[str]:
        cfg = self.config
        self.report = detect_transitions(
            cfg.density,
            cfg.channel,
            cfg.nu_max,
            cfg.nu_max / (cfg.steps - 1),
            cfg.max_depth,
            tolerances=cfg.tolerance_set,
            workers=cfg.workers,
            full_scan=cfg.full_scan,
        )
        events_out = sibling_path(self.out, "events")
        RecordFile(self.out, "evolve").save(trajectory_rows(self.report.path))
        RecordFile(events_out, "events").save(asdict(e) for e in self.report.events)
        logger.info("wrote %d events to %s", len(self.report.events), events_out)
        return [self.out, events_out]

    def summary(self) -> str:
        lines = [
            f"{kind.name.capitalize() + ':':<15}{self.report.count(kind):>6}"
            for kind in KIND
        ]
        lines.append(f"Derivative gap: {self.report.derivative_gap:.6g}")
        for e in self.report.events:
            lines.append(
                f"  {e.kind.name:<13} nu in [{e.nu_lo:.10f}, {e.nu_hi:.10f}] "
                f"jump {e.theta_jump:.4f}"
            )
        return "\n".join(lines)
