"""Classical-correlation objective against the measurement angle at chosen times."""

import logging

import numpy as np

from discordlab.channel import apply_two_qubit
from discordlab.commands.command import Command
from discordlab.records import RecordFile
from discordlab.transitions import scan_basis

logger = logging.getLogger(__name__)


class ScanBasisCommand(Command):
    """Write one nu,theta,objective block per requested time, theta over [0, pi]"""

    def run(self) -> list[str]:
        cfg = self.config
        thetas = np.linspace(0.0, np.pi, cfg.theta_steps)
        rows = []
        self.maxima = []
        for nu in cfg.nus:
            curve = scan_basis(apply_two_qubit(cfg.channel, cfg.density, nu), thetas)
            rows.extend(
                {"nu": nu, "theta": theta, "objective": value} for theta, value in curve
            )
            self.maxima.append((nu, *max(curve, key=lambda row: row[1])))
        RecordFile(self.out, "scan").save(rows)
        logger.info("wrote %d scan blocks to %s", len(cfg.nus), self.out)
        return [self.out]

    def summary(self) -> str:
        return "\n".join(
            f"nu={nu:<12.6g} argmax theta={theta:.6f} J={value:.6f}"
            for nu, theta, value in self.maxima
        )
