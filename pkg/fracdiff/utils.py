

import io
import os
import pathlib
import shutil
import tempfile
from typing import Iterable, Union

import numpy as np
from lxml import etree

import fracdiff
from fracdiff.config.logging import log


def as_float_array(values: Union[float, Iterable[float], np.ndarray], name: str = "values"):
    """ Returns values as a one dimensional float64 numpy array.

    Args:
        values (Union[float, Iterable[float], np.ndarray]): A scalar, sequence, or array of reals.
        name (str, optional): Default "values". The argument name, used in error messages.

    Returns:
        array (np.ndarray): A float64 array with ndim 1.

    Raises:
        TypeError: If values cannot be converted to a real array.
    """
    try:
        array = np.atleast_1d(np.asarray(values, dtype=np.float64))
    except (TypeError, ValueError) as e:
        raise TypeError(f"{name} must be real valued, got {type(values)}") from e

    if array.ndim != 1:
        raise TypeError(f"{name} must be one dimensional, got shape {array.shape}")

    return array


def is_integer(value: float):
    """ Returns True if value is a finite real with no fractional part. 2.0 -> True, 2.5 -> False """
    return bool(np.isfinite(value)) and float(value) == int(value)


def delete_directory(directory: str, keep_folder: bool = False):
    """ Delete a directory and its contents.

    Args:
        directory (str): The directory path.
        keep_folder (bool, optional): Default False. If True, only delete contents.
    """
    if not os.path.isdir(directory):
        return

    if keep_folder:
        for entry in os.scandir(directory):
            if entry.is_dir(follow_symlinks=False):
                shutil.rmtree(entry.path, ignore_errors=True)
            else:
                os.remove(entry.path)
    else:
        shutil.rmtree(directory, onerror=_log_rmtree_failure)


def _log_rmtree_failure(function, path, exc_info):
    log.warning(f"Unable to delete {path} with {function.__name__}: {exc_info[1]}")


def list_file_paths(directory: str, recursive: bool = True, absolute: bool = True):
    """ Returns a sorted list of paths to files in a directory, e.g. the csv and xml files of an experiment output tree.

    Args:
        directory (str): The directory to list files from.
        recursive (bool, optional): Default True. Include subdirectories.
        absolute (bool, optional): Default True. Return paths as absolute paths. If False, returns paths relative to directory.

    Returns:
        files (list): A list of file paths.
    """
    if not os.path.isdir(directory):
        raise NotADirectoryError(directory)

    root = pathlib.Path(directory).resolve()
    pattern = "**/*" if recursive else "*"
    files = [path for path in root.glob(pattern) if path.is_file()]

    if absolute:
        return sorted(str(path) for path in files)

    return sorted(str(path.relative_to(root)) for path in files)


class TempDirectoryPath:
    """ Gives a path to a uniquely named temporary directory on __enter__, deletes the directory if it exists on __exit__.

    Args:
        delete (bool, optional): Default True. Delete the temporary directory on __exit__
    """

    def __init__(self, delete: bool = True):
        # Validate args
        if not isinstance(delete, bool):
            raise TypeError(delete)

        self.delete = delete
        os.makedirs(fracdiff._TEMPDIR, exist_ok=True)
        self.temp_directory = str(pathlib.Path(tempfile.mkdtemp(dir=fracdiff._TEMPDIR)).resolve())

    def __enter__(self):
        return self.temp_directory

    def __exit__(self, type, value, traceback):
        if self.delete:
            # Delete temp directory and all of its contents
            if os.path.isdir(self.temp_directory):
                delete_directory(self.temp_directory)


def validate_xml(xml: Union[str, bytes, bytearray, io.BytesIO]):
    """ Attempts to parse the xml provided, returning the xml document as a string. Raises ValueError if the xml cannot be parsed.

    The text is returned as given (not re-serialised) so that element source lines stay meaningful in error messages.

    Args:
        xml (Union[str, bytes, bytearray, io.BytesIO]): The xml string, or file path, or bytes to parse.

    Returns:
        xml_string (str): The xml document.

    Raises:
        ValueError: if the xml cannot be parsed.
        TypeError: if the type of arg "xml" is invalid
    """
    if isinstance(xml, str):
        try:
            is_file = os.path.isfile(os.path.abspath(xml))
        except Exception:
            is_file = False

        if is_file:
            with open(xml, "rb") as f:
                xml_bytes = f.read()
        else:
            xml_bytes = xml.encode("utf-8")
    elif isinstance(xml, (bytes, bytearray)):
        xml_bytes = bytes(xml)
    elif isinstance(xml, io.BytesIO):
        xml_bytes = xml.getvalue()
    else:
        raise TypeError(xml)

    try:
        etree.fromstring(xml_bytes)
    except etree.XMLSyntaxError as e:
        raise ValueError(f"{e}") from e

    return xml_bytes.decode("utf-8")


def xml_to_string(element: "etree._Element"):
    """ Pretty prints an lxml element as a utf-8 xml document with declaration. """
    etree.indent(element, space=" " * 4)
    return etree.tostring(element, encoding="utf-8", xml_declaration=True, pretty_print=True).decode()
