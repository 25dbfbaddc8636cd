

from typing import Optional

from fracdiff.estimators.estimate_series import EstimatorKind
from fracdiff.estimators.estimator_params import WINDOWS
from fracdiff.harness.config.parameter import Parameter
from fracdiff.harness.config.section import Section

KIND_VALUES = [kind.value for kind in EstimatorKind] + ["integer", "minimal", "affine"]


class signal(Section):
    """ The test signal, named by its "name" attribute, with its parameters as children.

    signal(attributes={"name": "monomial"}, config={"p": "2"})
    """

    def __init__(self, attributes: Optional[dict] = None, config: Optional[dict] = None, sourceline: Optional[int] = None):
        self.name = self.__class__.__name__
        super().__init__(name=self.name, attributes=attributes or {"name": "exp_sin"}, config=config, sourceline=sourceline)


class grid(Section):
    def __init__(self, attributes: Optional[dict] = None, config: Optional[dict] = None, sourceline: Optional[int] = None):
        self.name = self.__class__.__name__
        super().__init__(name=self.name, attributes=attributes, config=config, sourceline=sourceline)


class noise(Section):
    def __init__(self, attributes: Optional[dict] = None, config: Optional[dict] = None, sourceline: Optional[int] = None):
        self.name = self.__class__.__name__
        super().__init__(name=self.name, attributes=attributes, config=config, sourceline=sourceline)


class reference(Section):
    """ Oracle settings: the step is dt / h_divisor, the gate is tolerance on times >= startup. """

    def __init__(self, attributes: Optional[dict] = None, config: Optional[dict] = None, sourceline: Optional[int] = None):
        self.name = self.__class__.__name__
        self.default_parameters = [
            Parameter(name="h_divisor", value="10"),
            Parameter(name="tolerance", value="0.001"),
            Parameter(name="startup", value="0.5"),
        ]
        super().__init__(name=self.name, attributes=attributes, default_parameters=self.default_parameters, config=config, sourceline=sourceline)


class run(Section):
    """ One estimator run. k, mu default to 0 and window to forward. """
    restrictions = {"kind": KIND_VALUES, "window": list(WINDOWS)}

    def __init__(self, attributes: Optional[dict] = None, config: Optional[dict] = None, sourceline: Optional[int] = None):
        self.name = self.__class__.__name__
        self.default_parameters = [
            Parameter(name="k", value="0"),
            Parameter(name="mu", value="0"),
            Parameter(name="window", value="forward", restrict_values=self.restrictions["window"]),
        ]
        super().__init__(name=self.name, attributes=attributes, default_parameters=self.default_parameters, config=config, sourceline=sourceline)


class runs(Section):
    def __init__(self, attributes: Optional[dict] = None, config: Optional[dict] = None, sourceline: Optional[int] = None):
        self.name = self.__class__.__name__
        super().__init__(name=self.name, attributes=attributes, config=config, sourceline=sourceline)


class output(Section):
    def __init__(self, attributes: Optional[dict] = None, config: Optional[dict] = None, sourceline: Optional[int] = None):
        self.name = self.__class__.__name__
        self.default_parameters = [
            Parameter(name="directory", value="fracdiff_output"),
        ]
        super().__init__(name=self.name, attributes=attributes, default_parameters=self.default_parameters, config=config, sourceline=sourceline)
