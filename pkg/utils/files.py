"""
Image source expansion for benchmark grids
Supports phantom tokens, PGM paths, globs and directories
"""

import glob
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Union

from config import Config
from errors import InvalidArgumentError
from imagecore.image import Image
from imagecore.pgm import read_pgm
from imagecore.phantoms import PHANTOMS, make_phantom

logger = logging.getLogger(__name__)

PHANTOM_PREFIX = "phantom:"
IMAGE_EXTENSIONS = {".pgm"}


@dataclass(frozen=True)
class ImageSource:
    """One ground-truth image of a benchmark: a phantom (kind, seed) or a PGM file"""

    name: str
    path: Optional[Path] = None
    phantom: Optional[str] = None
    seed: int = 0

    def load(self, n: Optional[int] = None) -> Image:
        if self.phantom is not None:
            return make_phantom(self.phantom, n or Config.BENCH_PHANTOM_SIZE, self.seed)
        assert self.path is not None
        return read_pgm(self.path)


def parse_phantom_token(token: str) -> ImageSource:
    """phantom:<kind>[:seed]"""
    parts = token[len(PHANTOM_PREFIX) :].split(":")
    kind = parts[0]
    if kind not in PHANTOMS:
        raise InvalidArgumentError(f"Unknown phantom kind: {kind} (available: {', '.join(PHANTOMS)})")
    if len(parts) > 2:
        raise InvalidArgumentError(f"Malformed phantom token: {token}")
    try:
        seed = int(parts[1]) if len(parts) == 2 else 0
    except ValueError:
        raise InvalidArgumentError(f"Phantom seed must be an integer: {token}")
    if seed < 0:
        raise InvalidArgumentError(f"Phantom seed must be non-negative: {token}")
    return ImageSource(name=f"{kind}-{seed}", phantom=kind, seed=seed)


def expand_image_sources(sources: List[str]) -> List[ImageSource]:
    """
    Expand source strings to individual images

    Args:
        sources: Phantom tokens, PGM paths, glob patterns or directories

    Returns:
        Deduplicated list of image sources in input order
    """
    expanded: List[ImageSource] = []
    seen = set()

    def add(source: ImageSource) -> None:
        key = source.path or (source.phantom, source.seed)
        if key not in seen:
            seen.add(key)
            expanded.append(source)

    for token in sources:
        if token.startswith(PHANTOM_PREFIX):
            add(parse_phantom_token(token))
            continue

        path = Path(token)
        if path.is_file():
            add(ImageSource(name=path.stem, path=path.resolve()))
        elif path.is_dir():
            # Recursively find images in directory
            for root, dirs, files in os.walk(path):
                dirs.sort()
                for file in sorted(files):
                    file_path = Path(root) / file
                    if file_path.suffix.lower() in IMAGE_EXTENSIONS:
                        add(ImageSource(name=file_path.stem, path=file_path.resolve()))
        else:
            matches = sorted(glob.glob(token, recursive=True))
            if not matches:
                logger.warning(f"Image source not found: {token}")
            for match in matches:
                match_path = Path(match)
                if match_path.is_file() and match_path.suffix.lower() in IMAGE_EXTENSIONS:
                    add(ImageSource(name=match_path.stem, path=match_path.resolve()))

    return expanded


def sidecar_path(output: Union[str, Path]) -> Path:
    """<out>.manifest next to an output file"""
    output = Path(output)
    return output.with_name(output.name + ".manifest")


def format_size(size_bytes: int) -> str:
    """Human-readable byte count"""
    if size_bytes < 1024:
        return f"{size_bytes}B"
    if size_bytes < 1024 * 1024:
        return f"{size_bytes / 1024:.1f}KB"
    return f"{size_bytes / (1024 * 1024):.1f}MB"
