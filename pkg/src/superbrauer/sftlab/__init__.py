"""Verification pipelines for the fundamental theorems and a command line front end."""

from .reports import KernelResult, ResourceLimitError, VerificationReport
from .pipelines import (
    kappa_matrix,
    kernel_eta,
    kernel_kappa,
    span_D0_ideal,
    verify_fft_gl,
    verify_sft_eta,
    verify_sft_osp,
)

__all__ = [
    "KernelResult",
    "ResourceLimitError",
    "VerificationReport",
    "kappa_matrix",
    "kernel_eta",
    "kernel_kappa",
    "span_D0_ideal",
    "verify_fft_gl",
    "verify_sft_eta",
    "verify_sft_osp",
]
