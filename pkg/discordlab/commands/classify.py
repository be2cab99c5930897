"""Basis-condition labels along a trajectory of an X state."""

import logging

from discordlab.channel import apply_two_qubit
from discordlab.commands.command import Command
from discordlab.records import RecordFile
from discordlab.states import density_to_xparams
from discordlab.transitions import CHEN, chen_classify, sudden_capable

logger = logging.getLogger(__name__)


class ClassifyCommand(Command):
    """Write nu,label,condition sides,flipped,sudden_capable for every grid point"""

    def run(self) -> list[str]:
        cfg = self.config
        tol = cfg.tolerance_set.sudden
        rows = []
        for nu in cfg.nu_grid.tolist():
            params = density_to_xparams(apply_two_qubit(cfg.channel, cfg.density, nu))
            chen = chen_classify(params)
            rows.append(
                {
                    "nu": nu,
                    "label": chen.label,
                    "sigma_z_lhs": chen.sigma_z[0],
                    "sigma_z_rhs": chen.sigma_z[1],
                    "sigma_x_lhs": chen.sigma_x[0],
                    "sigma_x_rhs": chen.sigma_x[1],
                    "flipped": chen.flipped,
                    "sudden_capable": sudden_capable(params, tol),
                }
            )
        self.counts = {
            label: sum(1 for r in rows if r["label"] == label) for label in CHEN
        }
        RecordFile(self.out, "classify").save(rows)
        logger.info("wrote %d classification rows to %s", len(rows), self.out)
        return [self.out]

    def summary(self) -> str:
        return "\n".join(
            f"{label.name:<16}{count:>8}" for label, count in self.counts.items()
        )
