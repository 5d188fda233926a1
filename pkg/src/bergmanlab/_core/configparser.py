"""Parse the experiment config file and keep its sections."""

from pathlib import Path

import tomli  # import tomllib in Python 3.11

from .errors import ConfigError


class ConfigParser:
    """Parse a TOML experiment file and store its sections."""

    def __init__(self, fp, sections_to_extract="all"):
        """Read the experiment file.

        Args:
            fp (str or Path): path to the TOML experiment file
            sections_to_extract (str or list of str):  [optional] sections to keep.
            By default every section in the file is kept.

        Returns:
            self.contents (dict):  {section heading: {key: value}} for each kept
            section

        Example:
            experiment file
                [spectrum]
                E = 0.5
                ks = [64, 128]
            ConfigParser(fp).contents["spectrum"]
                {'E': 0.5, 'ks': [64, 128]}

        """
        fp = Path(fp)
        self.path = fp
        try:
            with open(fp, "rb") as f:
                parsed = tomli.load(f)
        except OSError:
            raise ConfigError("config_file", "{0} cannot be read".format(fp)) from None
        except tomli.TOMLDecodeError as err:
            raise ConfigError(
                "config_file", "{0} is not valid TOML ({1})".format(fp.name, err)
            ) from None

        if sections_to_extract == "all":
            sections = list(parsed)
        elif isinstance(sections_to_extract, str):
            sections = [sections_to_extract]
        else:
            sections = list(sections_to_extract)

        _require_sections(parsed, sections)
        self.contents = {name: parsed[name] for name in sections}

    def has_section(self, section_name):
        """Return True if the section was read from the file."""
        return section_name in self.contents

    def get_section(self, section_name, default=None):
        """Return one section, or several sections keyed by name.

        Args:
            section_name (str | list of str):  section(s) to return
            default (dict):  [optional] returned for a single missing section
            instead of raising ConfigError

        Returns:
            dict: the section's {key: value}, or {name: section} when a list of
            names is given

        """
        if isinstance(section_name, str):
            if default is not None and section_name not in self.contents:
                return default
            _require_sections(self.contents, [section_name])
            return self.contents[section_name]

        _require_sections(self.contents, section_name)
        return {name: self.contents[name] for name in section_name}


def _require_sections(contents, names):
    """Raise ConfigError naming the first of the sections absent from contents."""
    missing = [name for name in names if name not in contents]
    if missing:
        raise ConfigError(
            missing[0], "config file is missing section(s): " + ", ".join(missing)
        )
