

from typing import Optional
from xml.sax.saxutils import escape, quoteattr

from fracdiff.harness.errors import RestrictedValue


class Parameter:
    """ An experiment configuration parameter which has a name and a string value, and can have attributes. """

    def __init__(self, name: str, value: str, attributes: Optional[dict] = None, restrict_values: Optional[list] = None, sourceline: Optional[int] = None):
        self._indent = 0
        self.restrict_values = restrict_values or []
        self.name = name
        self.sourceline = sourceline
        self.value = value
        self.attributes = attributes or {}

    def __str__(self):
        return self.text

    def __repr__(self):
        """ Change string representation of object. """
        return f'Parameter("{self.name}", "{self.value}")'

    @property
    def value(self):
        return self._value

    @value.setter
    def value(self, value):
        value = "" if value is None else str(value).strip()
        if self.restrict_values and value not in self.restrict_values:
            raise RestrictedValue(
                f"unexpected value '{value}', restricted to: {self.restrict_values}",
                field=self.name,
                line=self.sourceline,
            )
        self._value = value

    @property
    def text(self):
        """ String representation of XML. """
        indent = " " * 4 * self._indent

        string = f"{indent}<{self.name}"
        for k, v in sorted(self.attributes.items(), key=lambda kv: (kv[0].lower(), str(kv[1]).lower())):
            string += f" {k}={quoteattr(str(v))}"
        string += f">{escape(self.value)}</{self.name}>"

        return string
