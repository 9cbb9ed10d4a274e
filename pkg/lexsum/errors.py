"""Exception hierarchy shared by the library and the command line.

Every error carries the process exit code the command line uses for it:
2 for configuration problems, 3 for unreadable or malformed input files,
4 for failures inside a summarization or evaluation pipeline.
"""


class LexsumError(Exception):
    """Base class for all lexsum errors."""

    exit_code = 4


class ConfigError(LexsumError, ValueError):
    exit_code = 2


class InputError(LexsumError):
    exit_code = 3


class MissingFile(InputError):
    pass


class MissingStoplist(InputError):
    pass


class LexiconUnavailable(InputError):
    pass


class ParseError(InputError, ValueError):
    """A resource file could not be parsed; keeps the file and line."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        location = ''
        if path is not None:
            location = f'file {path}'
            if line is not None:
                location += f', line {line}'
            location += ': '
        super().__init__(f'{location}{message}')


class PipelineError(LexsumError):
    exit_code = 4


class IndexOutOfRange(PipelineError, IndexError):
    pass


class UnknownSynsetId(PipelineError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else 'unknown synset id'


class EmptyInput(PipelineError, ValueError):
    pass


class DegenerateLabels(PipelineError, ValueError):
    pass


class NonFiniteFeature(PipelineError, ValueError):
    pass


class EmptyVocabulary(PipelineError, ValueError):
    pass


class RankTooLarge(PipelineError, ValueError):
    pass


class NoConvergence(PipelineError):
    pass


class NegativeProbability(PipelineError, ValueError):
    pass


class AllConceptsEmpty(PipelineError, ValueError):
    pass


class InvalidGraph(PipelineError, ValueError):
    pass


class SingularSystem(PipelineError):
    pass


class BetaOutOfRange(PipelineError, ValueError):
    pass


class NoSenses(PipelineError, LookupError):
    pass


class EmptyNetwork(PipelineError, ValueError):
    pass


class InstanceTooLarge(PipelineError, ValueError):
    pass


class LengthMismatch(PipelineError, ValueError):
    pass


class EmptyReference(PipelineError, ValueError):
    pass


class TooFewSamples(PipelineError, ValueError):
    pass


class ConstantInput(PipelineError, ValueError):
    pass
