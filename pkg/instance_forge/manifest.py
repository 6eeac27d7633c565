from pathlib import Path
from typing import List, Optional, Union

from pydantic import BaseModel

from .schemes import GenScheme, GenerationError


class ForgeJob(BaseModel):
    base_file: Path
    scheme_id: str
    seed: int
    out_file: Path

    def scheme(self) -> GenScheme:
        return GenScheme.from_id(self.scheme_id, seed=self.seed)


def parse_manifest(text: str, base_dir: Optional[Path] = None) -> List[ForgeJob]:
    """
    One job per line: `base-file scheme-id seed out-file`. Relative paths
    resolve against `base_dir`; `#` starts a comment.
    """
    jobs = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4:
            raise GenerationError(f"manifest line {line_no}: expected 'base-file scheme-id seed out-file'")
        base_file, scheme_id, seed, out_file = parts
        try:
            seed_value = int(seed)
        except ValueError:
            raise GenerationError(f"manifest line {line_no}: seed '{seed}' is not an integer")
        GenScheme.from_id(scheme_id, seed=seed_value)
        base_path, out_path = Path(base_file), Path(out_file)
        if base_dir is not None:
            base_path = base_path if base_path.is_absolute() else base_dir / base_path
            out_path = out_path if out_path.is_absolute() else base_dir / out_path
        jobs.append(ForgeJob(base_file=base_path, scheme_id=scheme_id.upper(), seed=seed_value, out_file=out_path))
    return jobs


def load_manifest(path: Union[str, Path]) -> List[ForgeJob]:
    path = Path(path)
    return parse_manifest(path.read_text(encoding="utf-8"), base_dir=path.parent)
