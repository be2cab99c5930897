from .command import Command, CommandFactory
from .classify import ClassifyCommand
from .detect import DetectCommand
from .evolve import EvolveCommand
from .scan import ScanBasisCommand
from .survey import SurveyCommand

command_factory = CommandFactory()
command_factory.register("evolve", EvolveCommand)
command_factory.register("scan-basis", ScanBasisCommand)
command_factory.register("detect", DetectCommand)
command_factory.register("classify", ClassifyCommand)
command_factory.register("survey", SurveyCommand)
