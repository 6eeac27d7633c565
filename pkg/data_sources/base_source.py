from abc import ABC, abstractmethod
from typing import Any, Dict, List, Tuple

from core_model.instance_schema import Instance


class InstanceDataSource(ABC):
    """
    Abstract base class for instance sources (a single file, a directory).
    It defines the contract the benchmark pipeline loads instances through.
    """

    @abstractmethod
    def get_instances(self) -> Tuple[List[Instance], Dict[str, str]]:
        """
        Loads every instance the source holds.

        Returns:
            A tuple containing:
            - The parsed instances, sorted by name.
            - Load errors keyed by file name, for files that failed to parse.
        """
        pass

    @abstractmethod
    def get_metadata(self) -> Dict[str, Any]:
        """
        Returns a dictionary of metadata about the source,
        such as its title and the files it covers.
        """
        pass
