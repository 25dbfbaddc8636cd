

import math
from typing import Callable, List, Optional, Union

from lxml import etree

from fracdiff import utils
from fracdiff.estimators.errors import EstimatorError
from fracdiff.estimators.estimate_series import EstimatorKind
from fracdiff.estimators.estimator_params import EstimatorParams
from fracdiff.fraccalc.errors import FraccalcError
from fracdiff.fraccalc.frac_order import FracOrder
from fracdiff.harness.config import sections
from fracdiff.harness.config.section import Section
from fracdiff.harness.errors import ConfigError, SectionNotFound
from fracdiff.harness.run_spec import ReferenceSettings, RunSpec
from fracdiff.signals.classes import SignalError
from fracdiff.signals.expressions import create_expression
from fracdiff.signals.noise_spec import NoiseSpec

SCHEMA_VERSION = "1"


def _section_classes():
    return {cls.__name__: cls for cls in Section.__subclasses__() if cls.__module__ == sections.__name__}


def _section_from_element(element: "etree._Element"):
    section_class = _section_classes().get(element.tag)
    if section_class is None:
        raise ConfigError(f"unknown section, expected one of {sorted(_section_classes())}", field=element.tag, line=element.sourceline)

    section = section_class(attributes=dict(element.attrib), sourceline=element.sourceline)
    for item in element:
        if not isinstance(item.tag, str):
            # comment or processing instruction
            continue
        if len(item):
            section.subsections.append(_section_from_element(item))
        else:
            section.set(item.tag, item.text, sourceline=item.sourceline)

    return section


class ExperimentConfig:
    """ An experiment configuration made up of a list of Section instances. """

    def __init__(self, sections: Optional[list] = None, schema_version: str = SCHEMA_VERSION):
        self.sections = []
        self.schema_version = schema_version

        for section in sections or []:
            self.add_section(section)

    def __str__(self):
        return self.text

    def __getattr__(self, name):
        # Try to return matching Section from nonexistant attribute
        if name == "sections":
            raise AttributeError(name)

        section = next(iter(s for s in self.sections if s.name == name), None)
        if section:
            return section

        raise AttributeError(name)

    @property
    def text(self):
        """ String representation of XML. """
        string = '<?xml version="1.0" encoding="utf-8"?>'
        string += f'\n<experiment schema_version="{self.schema_version}">'
        for section in self.sections:
            section._indent = 1
            string += f"\n{section.text}"
        string += "\n</experiment>\n"

        return string

    def encode(self, *args):
        """ UTF-8 encoded string representation of XML. """
        return str(self).encode(*args)

    def get_section_names(self):
        """ Returns the Section.name values of self.sections in order. """
        return [section.name for section in self.sections]

    def get_section(self, name: str):
        """ Returns the named Section.

        Raises:
            fracdiff.harness.errors.SectionNotFound: The section was not found.
        """
        section = next(iter(s for s in self.sections if s.name == name), None)
        if section is None:
            raise SectionNotFound(f"'{name}' not in {self.get_section_names()}", field=name)
        return section

    def add_section(self, section: Section, replace: bool = True):
        """ Adds a Section instance to self.sections.

        Args:
            section (Section): A Section instance.
            replace (bool, optional): Default True. Deletes any pre-existing Section with the same .name attribute in self.sections.

        Returns:
            self
        """
        if not isinstance(section, Section):
            raise TypeError(section)

        if replace:
            self.sections = [s for s in self.sections if s.name != section.name]
        self.sections.append(section)

        return self

    def remove_section(self, section: Union[Section, str]):
        """ Removes all Section instances from self.sections that match arg "section".

        Raises:
            fracdiff.harness.errors.SectionNotFound: The section was not found.
        """
        name = section.name if isinstance(section, Section) else section
        if not isinstance(name, str):
            raise TypeError(section)
        if name not in self.get_section_names():
            raise SectionNotFound(f"'{name}' not in {self.get_section_names()}", field=name)

        self.sections = [s for s in self.sections if s.name != name]

        return self

    @staticmethod
    def from_string(string: str):
        """ Create ExperimentConfig object from string.

        Args:
            string (str): A string representation of an xml experiment configuration, or a file path.

        Returns:
            new_config (fracdiff.harness.config.ExperimentConfig): An ExperimentConfig object.

        Raises:
            fracdiff.harness.errors.ConfigError: If the xml is malformed, of another schema version, or has unknown sections.
        """
        try:
            string = utils.validate_xml(string)
        except ValueError as e:
            raise ConfigError(f"malformed xml: {e}", field="experiment") from e

        root = etree.fromstring(string.encode("utf-8"))
        if root.tag != "experiment":
            raise ConfigError(f"root element must be 'experiment', got '{root.tag}'", field=root.tag, line=root.sourceline)
        schema_version = root.get("schema_version")
        if schema_version != SCHEMA_VERSION:
            raise ConfigError(f"unsupported schema version {schema_version!r}, expected {SCHEMA_VERSION!r}", field="schema_version", line=root.sourceline)

        new_config = ExperimentConfig(schema_version=schema_version)
        for element in root:
            if not isinstance(element.tag, str):
                continue
            new_config.add_section(_section_from_element(element))

        return new_config

    @staticmethod
    def _convert(section: Section, name: str, convert: Callable, field: str, check: Optional[Callable] = None, requirement: str = ""):
        parameter = section.get_parameter(name)
        try:
            value = convert(parameter.value)
        except ValueError as e:
            raise ConfigError(f"cannot read {parameter.value!r} as {convert.__name__}", field=field, line=parameter.sourceline) from e
        if check is not None and not check(value):
            raise ConfigError(f"{parameter.value!r} {requirement}", field=field, line=parameter.sourceline)
        return value

    def signal_expression(self):
        """ Returns the configured test signal as an Expression. """
        section = self.get_section("signal")
        name = section.attributes.get("name", "")
        parameters = {parameter.name: parameter.value for parameter in section.parameters}
        try:
            return create_expression(name, parameters)
        except SignalError as e:
            raise ConfigError(str(e), field="signal", line=section.sourceline) from e

    def grid(self):
        """ Returns (t_start, dt, count). """
        section = self.get_section("grid")
        t_start = self._convert(section, "t_start", float, "grid/t_start", math.isfinite, "must be finite")
        dt = self._convert(section, "dt", float, "grid/dt", lambda v: math.isfinite(v) and v > 0, "must be positive")
        count = self._convert(section, "count", int, "grid/count", lambda v: v >= 1, "must be at least 1")
        return t_start, dt, count

    def noise_spec(self):
        """ Returns the NoiseSpec, or None when the experiment has no noise section. """
        if "noise" not in self.get_section_names():
            return None
        section = self.get_section("noise")
        snr = self._convert(section, "snr_db", float, "noise/snr_db")
        seed = self._convert(section, "seed", int, "noise/seed")
        try:
            return NoiseSpec(target_snr_db=snr, seed=seed)
        except SignalError as e:
            raise ConfigError(str(e), field="noise", line=section.sourceline) from e

    def reference_settings(self):
        section = self.get_section("reference") if "reference" in self.get_section_names() else sections.reference()
        return ReferenceSettings(
            h_divisor=self._convert(section, "h_divisor", int, "reference/h_divisor", lambda v: v >= 1, "must be at least 1"),
            tolerance=self._convert(section, "tolerance", float, "reference/tolerance", lambda v: v > 0, "must be positive"),
            startup=self._convert(section, "startup", float, "reference/startup", math.isfinite, "must be finite"),
        )

    def output_directory(self):
        section = self.get_section("output") if "output" in self.get_section_names() else sections.output()
        return section.get("directory")

    def run_specs(self) -> List[RunSpec]:
        """ Returns the configured runs bound to the grid step.

        Raises:
            fracdiff.harness.errors.ConfigError: If a run is inconsistent, e.g. alpha and n disagree or T is not a multiple of dt.
        """
        _, dt, _ = self.grid()
        runs_section = self.get_section("runs")
        run_sections = [s for s in runs_section.subsections if s.name == "run"]
        if not run_sections:
            raise ConfigError("at least one run is required", field="runs", line=runs_section.sourceline)

        specs = []
        for index, section in enumerate(run_sections):
            field = f"runs/run[{index}]"
            kind = EstimatorKind.parse(section.get_parameter("kind").value)
            alpha = self._convert(section, "alpha", float, f"{field}/alpha")
            n = self._convert(section, "n", int, f"{field}/n") if "n" in section.get_parameter_names() else None
            k = self._convert(section, "k", float, f"{field}/k")
            mu = self._convert(section, "mu", float, f"{field}/mu")
            T = self._convert(section, "T", float, f"{field}/T")
            window = section.get("window", "forward")

            try:
                order = FracOrder(alpha, n)
            except FraccalcError as e:
                raise ConfigError(str(e), field=f"{field}/alpha", line=section.get_parameter("alpha").sourceline) from e
            if kind is EstimatorKind.MINIMAL_INTEGER and not order.is_integer:
                raise ConfigError(f"the integer estimator needs an integer alpha, got {alpha}", field=f"{field}/alpha", line=section.get_parameter("alpha").sourceline)
            if window == "backward" and kind is not EstimatorKind.MINIMAL_INTEGER:
                raise ConfigError("backward windows are only defined for the integer estimator", field=f"{field}/window", line=section.get_parameter("window").sourceline)

            try:
                params = EstimatorParams.for_signal_step(order=order, k=k, mu=mu, T=T, dt=dt, window=window)
            except EstimatorError as e:
                raise ConfigError(str(e), field=f"{field}/T", line=section.get_parameter("T").sourceline) from e

            specs.append(RunSpec(index=index, kind=kind, params=params))

        return specs

    def validate(self):
        """ Reads every section through its typed accessor.

        Returns:
            self

        Raises:
            fracdiff.harness.errors.ConfigError: The first invalid field, with its source line.
        """
        self.signal_expression()
        self.grid()
        self.noise_spec()
        self.reference_settings()
        self.run_specs()
        self.output_directory()

        return self
