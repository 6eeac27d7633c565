from typing import List, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

import config
from core_model.instance_schema import Instance

MandatoryMethod = Literal["SM", "CM"]
PhysicalMethod = Literal["CPI", "DPI"]
LogicalMethod = Literal["FLI", "NLI", "NONE"]


class GenerationError(ValueError):
    """A generation job cannot be carried out as requested."""


class GenScheme(BaseModel):
    """
    One leaf of the generation tree: how mandatory customers are spread
    (scattered or clustered), how arcs are removed (cluster-driven or
    degree-driven) and, for PL, whether far or near customers conflict.
    """
    model_config = ConfigDict(frozen=True)

    mandatory: MandatoryMethod
    physical: PhysicalMethod
    logical: LogicalMethod = "NONE"
    seed: int = 0
    mandatory_fraction: float = Field(config.MANDATORY_FRACTION, gt=0, le=1)
    removal_fraction: float = Field(config.PHYSICAL_REMOVAL_FRACTION, ge=0, le=1)
    logical_fraction: float = Field(config.LOGICAL_FRACTION, gt=0, le=1)
    cluster_count: int = Field(config.CLUSTER_COUNT, ge=1)
    incompatibility_probability: float = Field(config.CLUSTER_INCOMPATIBILITY_PROBABILITY, ge=0, le=1)
    service_share: float = Field(config.SERVICE_SHARE, ge=0)
    tmax_stretch: float = Field(config.TMAX_STRETCH, gt=0)

    @property
    def scheme_id(self) -> str:
        parts = [self.mandatory, self.physical]
        if self.logical != "NONE":
            parts.append(self.logical)
        return "-".join(parts)

    @property
    def variant(self) -> str:
        return "P" if self.logical == "NONE" else "PL"

    @classmethod
    def from_id(cls, scheme_id: str, seed: int = 0, **params) -> "GenScheme":
        parts = scheme_id.strip().upper().split("-")
        if len(parts) not in (2, 3):
            raise GenerationError(f"scheme id '{scheme_id}' must look like SM-CPI or CM-DPI-NLI")
        logical = parts[2] if len(parts) == 3 else "NONE"
        try:
            return cls(mandatory=parts[0], physical=parts[1], logical=logical, seed=seed, **params)
        except ValueError as e:
            raise GenerationError(f"unknown scheme id '{scheme_id}': {e}") from e

    def rng(self, stream: int) -> np.random.Generator:
        """Independent deterministic stream per generation step."""
        return np.random.default_rng([self.seed, stream])


def all_schemes(seed: int = 0, **params) -> List[GenScheme]:
    """The 4 P-schemes followed by the 8 PL-schemes."""
    schemes = []
    for logical in ("NONE", "FLI", "NLI"):
        for mandatory in ("SM", "CM"):
            for physical in ("CPI", "DPI"):
                schemes.append(GenScheme(mandatory=mandatory, physical=physical, logical=logical, seed=seed, **params))
    return schemes


def generation_distances(instance: Instance) -> np.ndarray:
    """Symmetric distances indexed by node id, from coordinates when available."""
    if instance.coordinates is not None:
        points = np.zeros((instance.node_count + 1, 2))
        points[1:] = np.asarray(instance.coordinates, dtype=float)
        diff = points[:, None, :] - points[None, :, :]
        return np.sqrt((diff ** 2).sum(axis=2))
    travel = instance.travel_matrix()
    return (travel + travel.T) / 2.0
