

from typing import Optional, Union
from xml.sax.saxutils import quoteattr

from fracdiff.harness.config.parameter import Parameter
from fracdiff.harness.errors import ParameterNotFound, SectionNotFound


class Section:
    """ An experiment configuration section which has a name, and can have attributes, parameters, and subsections. """

    # Allowed values of known parameters, keyed by parameter name
    restrictions: dict = {}

    def __init__(self,
                 name: str,
                 attributes: Optional[dict] = None,
                 parameters: Optional[list] = None,
                 subsections: Optional[list] = None,
                 default_parameters: Optional[list] = None,
                 config: Optional[dict] = None,
                 sourceline: Optional[int] = None,
                 ):
        self._indent = 0
        self.name = name
        self.attributes = attributes or {}
        self.parameters = parameters or []
        self.subsections = subsections or []
        self.sourceline = sourceline

        for parameter in default_parameters or []:
            self.add_parameter(parameter)

        for parameter_name, parameter_value in (config or {}).items():
            self.set(parameter_name, parameter_value)

    def __str__(self):
        return self.text

    def __getattr__(self, name):
        # Avoid recursion before __init__ has assigned the containers
        if name in ("parameters", "subsections"):
            raise AttributeError(name)

        parameter = next(iter(p for p in self.parameters if p.name == name), None)
        if parameter:
            return parameter

        subsection = next(iter(s for s in self.subsections if s.name == name), None)
        if subsection:
            return subsection

        raise AttributeError(name)

    def __repr__(self):
        """ Change string representation of object. """
        return f'Section("{self.name}")'

    @property
    def text(self):
        """ String representation of XML. """
        indent = " " * 4 * self._indent

        string = f"{indent}<{self.name}"
        for k, v in sorted(self.attributes.items(), key=lambda kv: (str(kv[0]).lower(), str(kv[1]).lower())):
            string += f" {k}={quoteattr(str(v))}"
        string += ">"
        for parameter in self.parameters:
            parameter._indent = self._indent + 1
            string += f"\n{parameter.text}"
        for subsection in self.subsections:
            subsection._indent = self._indent + 1
            string += f"\n{subsection.text}"
        string += f"\n{indent}</{self.name}>"

        return string

    def get_parameter_names(self):
        """ Returns the Parameter.name values of self.parameters in order. """
        return [parameter.name for parameter in self.parameters]

    def get(self, name: str, default: Optional[str] = None):
        """ Returns the value of the named parameter, or default if there is none. """
        parameter = next(iter(p for p in self.parameters if p.name == name), None)
        return default if parameter is None else parameter.value

    def get_parameter(self, name: str):
        """ Returns the named Parameter.

        Raises:
            fracdiff.harness.errors.ParameterNotFound: The parameter was not found.
        """
        parameter = next(iter(p for p in self.parameters if p.name == name), None)
        if parameter is None:
            raise ParameterNotFound(f"'{name}' not in {self.get_parameter_names()}", field=f"{self.name}/{name}", line=self.sourceline)
        return parameter

    def set(self, name: str, value: str, sourceline: Optional[int] = None):
        """ Sets a parameter value, creating the parameter with this section's value restrictions if needed. """
        return self.add_parameter(Parameter(name=name, value=value, restrict_values=self.restrictions.get(name), sourceline=sourceline))

    def remove_parameter(self, parameter: Union[Parameter, str]):
        """ Removes all Parameter instances from self.parameters that match arg "parameter".

        Args:
            parameter (Union[Parameter, str]): A Parameter instance or str to match Parameter.name.

        Returns:
            self

        Raises:
            fracdiff.harness.errors.ParameterNotFound: The parameter was not found.
        """
        if isinstance(parameter, Parameter):
            if parameter not in self.parameters:
                raise ParameterNotFound(repr(parameter), field=self.name, line=self.sourceline)

            while parameter in self.parameters:
                self.parameters.remove(parameter)

        elif isinstance(parameter, str):
            parameter_names = self.get_parameter_names()
            if parameter not in parameter_names:
                raise ParameterNotFound(f"'{parameter}' not in {parameter_names}", field=self.name, line=self.sourceline)

            self.parameters = [p for p in self.parameters if p.name != parameter]

        else:
            raise TypeError(parameter)

        return self

    def add_parameter(self, parameter: Parameter, replace: bool = True):
        """ Adds a Parameter instance to self.parameters.

        Args:
            parameter (Parameter): A Parameter instance.
            replace (bool, optional): Default True. Replaces any pre-existing Parameter with the same .name in place.

        Returns:
            self
        """
        if not isinstance(parameter, Parameter):
            raise TypeError(parameter)

        names = self.get_parameter_names()
        if replace and parameter.name in names:
            # Keep the position of the first parameter with this name
            index = names.index(parameter.name)
            self.parameters = [p for p in self.parameters if p.name != parameter.name]
            self.parameters.insert(index, parameter)
        else:
            self.parameters.append(parameter)

        return self

    def get_subsection(self, name: str):
        """ Returns the first subsection with the given name.

        Raises:
            fracdiff.harness.errors.SectionNotFound: The subsection was not found.
        """
        subsection = next(iter(s for s in self.subsections if s.name == name), None)
        if subsection is None:
            raise SectionNotFound(f"'{name}' not in {[s.name for s in self.subsections]}", field=f"{self.name}/{name}", line=self.sourceline)
        return subsection
