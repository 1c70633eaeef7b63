"""Named problem setups that pin a solution route and its default coefficients.

``alpha`` always means the order passed by the user: the ``theorem`` and ``corollary1`` presets
take (alpha, beta) directly, the doubled-order presets take the half order
alpha2 and solve with time orders (2 alpha2, alpha2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ValidationError
from .rdsolve import (Grid, InitialCondition, KQuadrature, Profile, RDParams, SourceTerm,
                      corollary2_params, solve_corollary2, solve_profile, solve_telegraph)
from .specfun import SeriesControl

__all__ = ["Preset", "PRESETS", "get_preset", "gaussian_source", "run_preset"]


@dataclass(frozen=True)
class Preset:
    name: str
    route: str
    doubled: bool
    alpha: float
    beta: float | None
    a: float
    nu: float
    xi: float
    gamma_space: float = 2.0
    allow_source: bool = True
    require_xi0: bool = False

    def params(self) -> RDParams:
        if self.doubled:
            return corollary2_params(self.alpha, self.a, self.nu, self.xi, self.gamma_space)
        return RDParams(self.alpha, self.beta, self.gamma_space, self.a, self.nu, self.xi)

    def with_overrides(self, **kw) -> "Preset":
        kw = {k: v for k, v in kw.items() if v is not None}
        if self.doubled and "beta" in kw:
            raise ValidationError(f"preset {self.name!r} fixes beta = alpha; pass only --alpha")
        out = replace(self, **kw)
        if out.require_xi0 and out.xi != 0:
            raise ValidationError(f"preset {self.name!r} fixes xi = 0")
        if out.doubled and out.gamma_space != 2:
            raise ValidationError(f"preset {self.name!r} needs gamma_space = 2")
        out.params()
        return out


PRESETS = {
    "theorem": Preset("theorem", "theorem", False, 0.9, 0.45, 1.0, 1.0, 0.3),
    "corollary1": Preset("corollary1", "theorem", False, 0.9, 0.45, 1.0, 1.0, 0.0),
    "corollary2": Preset("corollary2", "corollary2", True, 0.8, None, 1.0, 1.0, 0.3),
    "telegraph": Preset("telegraph", "corollary2", True, 0.7, None, 1.0, 1.0, 0.3, allow_source=False),
    "telegraph-xi0": Preset("telegraph-xi0", "telegraph", True, 0.5, None, 1.0, 1.0, 0.0,
                            allow_source=False, require_xi0=True),
}


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        raise ValidationError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


def gaussian_source(amplitude: float, width: float) -> SourceTerm:
    """Time-independent source amplitude * exp(-x**2 / (2 width**2))."""
    if not width > 0:
        raise ValidationError(f"source width must be positive, got {width!r}")
    c = amplitude * width * math.sqrt(2 * math.pi)
    return SourceTerm.separable(lambda k: c * np.exp(-0.5 * (width * k) ** 2),
                                lambda t: 1.0,
                                lambda x: amplitude * np.exp(-0.5 * (np.asarray(x) / width) ** 2))


def run_preset(pre: Preset, grid: Grid, ic: InitialCondition | None = None,
               src: SourceTerm | None = None, kq: KQuadrature | None = None,
               ctl: SeriesControl | None = None, workers: int = 1) -> Profile:
    """Solve the preset's problem on ``grid``; the default IC is the delta."""
    ic = ic or InitialCondition.delta()
    src = src or SourceTerm.zero()
    if not src.is_zero and not pre.allow_source:
        raise ValidationError(f"preset {pre.name!r} has no source term")
    if pre.route == "theorem":
        prof = solve_profile(pre.params(), ic, src, grid, kq, ctl, workers=workers)
    elif pre.name == "corollary2":
        prof = solve_corollary2(pre.alpha, pre.a, pre.nu, pre.xi, src, grid, kq, ctl, ic=ic, workers=workers)
    else:
        prof = solve_telegraph(pre.alpha, pre.a, pre.nu, pre.xi, grid, kq, ctl, ic=ic, workers=workers)
    prof.meta["preset"] = pre.name
    return prof
