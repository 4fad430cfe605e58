from dataclasses import asdict, dataclass, field

SUITES = ('chars', 'res', 'diagrams', 'lemma5', 'lemma6', 'twotwo', 'resver', 'pipeline')

# suites whose checks need an abelian G′
ABELIAN_SUITES = ('lemma5', 'lemma6', 'twotwo', 'resver', 'pipeline')

PASS = 'pass'
FAIL = 'fail'
INDETERMINATE = 'indeterminate'


@dataclass(frozen=True)
class SuiteConfig:
    l: int
    precision: int
    gamma_exponent: int
    level: int = None
    group: str = 'heisenberg'
    presentation: str = None
    seed: int = 42
    suites: tuple = ()
    format: str = 'json'
    timings: bool = False
    workers: int = 1
    units: int = 100
    betas: int = 50

    def to_dict(self):
        """Run parameters that determine the report; output options are left out"""
        data = asdict(self)
        for key in ('format', 'timings', 'workers'):
            data.pop(key)
        data['suites'] = list(self.suites)
        return data


@dataclass(frozen=True)
class CheckTask:
    """One scheduled check; `index` feeds the derived seed"""
    suite: str
    key: str
    marking_index: int
    index: int
    run: object = field(compare=False, repr=False)


@dataclass
class CheckRecord:
    suite: str
    key: str
    group: str
    status: str
    precision_used: int = None
    details: dict = field(default_factory=dict)
    error: dict = None
    seconds: float = 0.0


@dataclass
class Report:
    config: SuiteConfig = None
    checks: list = field(default_factory=list)

    @property
    def summary(self):
        counts = {PASS: 0, FAIL: 0, INDETERMINATE: 0}
        for record in self.checks:
            counts[record.status] += 1
        return counts

    @property
    def exit_code(self):
        summary = self.summary
        if summary[FAIL]:
            return 1
        if summary[INDETERMINATE]:
            return 2
        return 0
