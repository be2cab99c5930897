"""Discord trajectory of one state under the dephasing channel."""

import logging
from dataclasses import asdict

from discordlab.commands.command import Command
from discordlab.records import RecordFile
from discordlab.transitions import TrajectoryPoint, evolve_trajectory

logger = logging.getLogger(__name__)


def trajectory_rows(points: list[TrajectoryPoint]) -> list[dict]:
    return [asdict(p) for p in points]


class EvolveCommand(Command):
    """Write nu,discord,classical,mutual_info,theta_star,basis_label per grid point"""

    def run(self) -> list[str]:
        cfg = self.config
        self.points = evolve_trajectory(
            cfg.density,
            cfg.channel,
            cfg.nu_grid,
            workers=cfg.workers,
            full_scan=cfg.full_scan,
        )
        rows = RecordFile(self.out, "evolve").save(trajectory_rows(self.points))
        logger.info("wrote %d trajectory rows to %s", rows, self.out)
        return [self.out]

    def summary(self) -> str:
        first, peak = self.points[0], max(self.points, key=lambda p: p.discord)
        return (
            f"Points: {len(self.points):>10}\n"
            f"D(0): {first.discord:>14.6f}\n"
            f"Max D: {peak.discord:>13.6f} at nu={peak.nu:.6f}"
        )
