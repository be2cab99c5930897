"""Abstract base class for CLI commands and the command factory"""

from abc import ABC, abstractmethod
from typing import Callable

from discordlab.config import RunConfig


class Command(ABC):
    """Abstract base class for commands"""

    results_dir = "results"

    def __init__(self, config: RunConfig):
        self.config = config

    @property
    def out(self) -> str:
        """Output CSV path, results/<command>.csv unless configured"""
        return self.config.out or f"{self.results_dir}/{self.config.command}.csv"

    @abstractmethod
    def run(self) -> list[str]:
        """Execute the command and return the paths of the written files"""

    def summary(self) -> str:
        return ""


class CommandFactory:
    """Factory for creating commands"""

    container: dict[str, Callable[..., Command]] = {}

    def register(self, name: str, fn: Callable[..., Command]) -> None:
        CommandFactory.container[name] = fn

    def create(self, name: str, config: RunConfig) -> Command:
        try:
            return CommandFactory.container[name](config)
        except KeyError:
            raise ValueError(f"Invalid command: {name!r}") from None
