

import os

from fracdiff.config import logging

# Packaged experiment configurations, reachable by file name without the .xml extension
experiments_directory = os.path.join(os.path.dirname(os.path.abspath(__file__)), "experiments")


def packaged_experiments():
    """ Returns the sorted names of the packaged experiment configurations. """
    return sorted(
        os.path.splitext(file_name)[0]
        for file_name in os.listdir(experiments_directory)
        if file_name.endswith(".xml")
    )
