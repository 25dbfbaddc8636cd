

from fracdiff.harness.config import sections
from fracdiff.harness.config.experiment_config import SCHEMA_VERSION, ExperimentConfig
from fracdiff.harness.config.parameter import Parameter
from fracdiff.harness.config.section import Section
