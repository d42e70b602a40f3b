"""twistedops: exact twisted differential operators on Jordan-algebra
coordinates, with a mechanical verification suite for their structural
identities and a one-variable quantization laboratory.

The layers, bottom up:

* :mod:`twistedops.ring`   -- Gaussian-rational scalars, formal-parameter
  polynomials, sparse multivariate polynomials, localized fractions and
  the quadratic extension by a square root w of the norm (w*w = F);
* :mod:`twistedops.jordan` -- the concrete algebra families ``sym:r``,
  ``full:r``, ``spin:p`` with trace form, norm, adjugate and the
  derivative-identity suite;
* :mod:`twistedops.weyl`   -- normal-ordered differential operators on the
  cover, composition, the algebraic Fourier transform, the z -> -z
  anti-automorphism, conjugation by w and both filtrations;
* :mod:`twistedops.rep`    -- the twisted operator families and everything
  generated from them (symmetry span, polynomial module, distinguished
  vectors);
* :mod:`twistedops.verify` -- the identity suite producing structured
  reports; the critical twists 1/2 -+ 1/(4m) are extracted here;
* :mod:`twistedops.moyal`  -- Weyl symmetrization, circle product,
  supertrace and pairing in one variable;
* :mod:`twistedops.cli`    -- the ``twistedops`` command.
"""

from .jordan import JElem, JordanAlgebra, from_selector, make_full, make_spin, make_sym
from .report import CheckResult, Report
from .ring import (
    LAMBDA,
    LambdaPoly,
    LocFn,
    RingContext,
    Scalar,
    SuperFn,
    ZPoly,
    grade,
)
from .verify import critical_values, run_suite
from .weyl import DiffOp, PolyOpPlus, diffop_str, fourier, parse_diffop

__all__ = [
    "CheckResult",
    "DiffOp",
    "JElem",
    "JordanAlgebra",
    "LAMBDA",
    "LambdaPoly",
    "LocFn",
    "PolyOpPlus",
    "Report",
    "RingContext",
    "Scalar",
    "SuperFn",
    "ZPoly",
    "critical_values",
    "diffop_str",
    "fourier",
    "from_selector",
    "grade",
    "make_full",
    "make_spin",
    "make_sym",
    "parse_diffop",
    "run_suite",
]

__version__ = "0.1.0"
