"""Backdoor triggers and targets.

A trigger is a fixed image R composed from a binary mask M and a pattern g:
R = M*g + (1-M)*background. Stencil triggers (box, glasses) are loaded from
bundled grayscale+alpha assets and composed onto a zero background; the noise
trigger is a fixed standard-normal draw with an all-ones mask. At inference
the attacker hands the sampler t_max * (R + z) instead of t_max * z.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np
import torch
from PIL import Image, UnidentifiedImageError

from .errors import AssetError
from .validation import as_image_array, check_binary_mask, check_range, check_same_shape

__all__ = [
    "TriggerSpec",
    "TargetSpec",
    "compose_trigger",
    "make_noise_trigger",
    "load_stencil_trigger",
    "null_trigger",
    "apply_trigger_to_noise",
    "load_target",
    "asset_dir",
]

TRIGGER_KINDS = ("noise", "box", "glasses", "custom")
STENCIL_KINDS = ("box", "glasses")
TARGET_LABELS = ("hat", "cat")

ASSET_DIR_ENV = "CMBACKDOOR_ASSETS"


def asset_dir() -> Path:
    """Directory holding stencil/target image files.

    Defaults to the bundled package assets; override with the
    CMBACKDOOR_ASSETS environment variable.
    """
    override = os.environ.get(ASSET_DIR_ENV)
    if override:
        return Path(override)
    return Path(resources.files("cmbackdoor") / "assets")


@dataclass(frozen=True)
class TriggerSpec:
    """Immutable trigger: kind tag, binary mask, pattern, and composed image."""

    kind: str
    mask: np.ndarray
    pattern: np.ndarray
    composed: np.ndarray
    seed: int | None = None

    def __post_init__(self):
        if self.kind not in TRIGGER_KINDS:
            raise ValueError(f"unknown trigger kind {self.kind!r}, expected one of {TRIGGER_KINDS}")
        check_same_shape("mask", self.mask, "pattern", self.pattern)
        check_same_shape("mask", self.mask, "composed", self.composed)
        check_binary_mask(self.mask)
        recomposed = compose_trigger(self.mask, self.pattern, np.zeros_like(self.pattern))
        if not np.array_equal(recomposed, self.composed):
            raise ValueError("composed image is not mask*pattern on a zero background")
        if self.kind == "noise" and not np.all(self.mask == 1):
            raise ValueError("noise triggers must use an all-ones mask")
        for arr in (self.mask, self.pattern, self.composed):
            arr.setflags(write=False)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(self.composed.shape)


@dataclass(frozen=True)
class TargetSpec:
    """The image the compromised model should emit when the trigger fires."""

    image: np.ndarray
    label: str

    def __post_init__(self):
        img = as_image_array(self.image, "target image")
        check_range(img, name="target image")
        object.__setattr__(self, "image", img)
        self.image.setflags(write=False)


def compose_trigger(mask, pattern, background) -> np.ndarray:
    """Elementwise mask*pattern + (1-mask)*background."""
    mask = as_image_array(mask, "mask")
    pattern = as_image_array(pattern, "pattern")
    background = as_image_array(background, "background")
    check_same_shape("mask", mask, "pattern", pattern)
    check_same_shape("mask", mask, "background", background)
    check_binary_mask(mask)
    return mask * pattern + (1.0 - mask) * background


def make_noise_trigger(seed: int, shape: tuple[int, ...]) -> TriggerSpec:
    """Fixed standard-normal trigger; identical for identical seeds."""
    rng = np.random.default_rng(seed)
    pattern = rng.standard_normal(shape).astype(np.float32)
    mask = np.ones(shape, dtype=np.float32)
    composed = compose_trigger(mask, pattern, np.zeros(shape, dtype=np.float32))
    return TriggerSpec(kind="noise", mask=mask, pattern=pattern, composed=composed, seed=seed)


def null_trigger(shape: tuple[int, ...]) -> TriggerSpec:
    """All-zero trigger; injecting it leaves sampling noise untouched."""
    zeros = np.zeros(shape, dtype=np.float32)
    return TriggerSpec(kind="custom", mask=zeros, pattern=zeros.copy(), composed=zeros.copy())


def _load_asset_image(path: Path, mode: str) -> np.ndarray:
    if not path.is_file():
        raise AssetError(f"asset file not found: {path}")
    try:
        with Image.open(path) as img:
            return np.asarray(img.convert(mode), dtype=np.float32)
    except (UnidentifiedImageError, OSError) as exc:
        raise AssetError(f"asset file could not be decoded: {path} ({exc})") from exc


def _byte_to_unit(values: np.ndarray) -> np.ndarray:
    # documented byte -> pixel mapping: v / 127.5 - 1
    return (values / 127.5 - 1.0).astype(np.float32)


def _replicate_channels(plane: np.ndarray, channels: int) -> np.ndarray:
    return np.repeat(plane[None, :, :], channels, axis=0)


def load_stencil_trigger(kind: str, shape: tuple[int, ...], directory: Path | None = None) -> TriggerSpec:
    """Load a box/glasses stencil for a (C, H, W) data shape.

    The stencil file `<kind>_<H>x<W>.png` is grayscale+alpha: the alpha plane
    defines the mask support, the gray plane the pattern. The composed trigger
    carries the stencil on a zero background.
    """
    if kind not in STENCIL_KINDS:
        raise ValueError(f"unknown stencil kind {kind!r}, expected one of {STENCIL_KINDS}")
    if len(shape) != 3:
        raise ValueError(f"stencil triggers need a (C, H, W) shape, got {shape}")
    channels, height, width = shape
    path = Path(directory) if directory is not None else asset_dir()
    path = path / f"{kind}_{height}x{width}.png"
    la = _load_asset_image(path, "LA")
    if la.shape[:2] != (height, width):
        raise AssetError(f"asset file has wrong resolution: {path} is {la.shape[1]}x{la.shape[0]}")
    mask = _replicate_channels((la[:, :, 1] >= 128).astype(np.float32), channels)
    pattern = _replicate_channels(_byte_to_unit(la[:, :, 0]), channels)
    composed = compose_trigger(mask, pattern, np.zeros_like(pattern))
    return TriggerSpec(kind=kind, mask=mask, pattern=pattern, composed=composed)


def load_target(name: str, shape: tuple[int, ...], directory: Path | None = None) -> TargetSpec:
    """Load a named target asset ("hat", "cat") or an image file path.

    The image is resized by nearest neighbour if needed, mapped to [-1, 1]
    and replicated across the requested channel count.
    """
    if len(shape) != 3:
        raise ValueError(f"image targets need a (C, H, W) shape, got {shape}")
    channels, height, width = shape
    if name in TARGET_LABELS:
        path = (Path(directory) if directory is not None else asset_dir()) / f"{name}_{height}x{width}.png"
        label = name
    else:
        path = Path(name)
        label = path.stem
    gray = _load_asset_image(path, "L")
    if gray.shape != (height, width):
        gray = np.asarray(
            Image.fromarray(gray.astype(np.uint8)).resize((width, height), Image.NEAREST),
            dtype=np.float32,
        )
    image = _replicate_channels(_byte_to_unit(gray), channels)
    return TargetSpec(image=image, label=label)


def apply_trigger_to_noise(z, trig: TriggerSpec, t_max: float):
    """Initial sample handed to one-step sampling when the backdoor fires.

    Returns t_max * (R + z); works on single images or batches, numpy or
    torch. With the null trigger this is exactly the clean scaling t_max * z.
    """
    composed = trig.composed
    if torch.is_tensor(z):
        composed = torch.from_numpy(np.ascontiguousarray(composed)).to(dtype=z.dtype, device=z.device)
    if tuple(z.shape[z.ndim - composed.ndim :]) != tuple(composed.shape):
        raise ValueError(f"noise shape {tuple(z.shape)} does not end with trigger shape {tuple(composed.shape)}")
    return t_max * (composed + z)
