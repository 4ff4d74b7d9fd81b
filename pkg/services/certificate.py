"""Re-derive a serialized covering and check every invariant it claims."""

import logging
from collections.abc import Callable

import numpy as np

from schemas.covering import Certificate, CertificateCheck, CoveringBundle
from schemas.registry import ExampleCheck
from services.cartan import CartanMatrix, cartan_from_q, fold, positive_roots, type_label
from services.covering import INERT, covering_module
from services.exceptions import CoveringNicholsError, UnsupportedError
from services.groups import claim_two_violations, validate_cocycle
from services.oracle import hilbert_prefix
from services.registry import worked_example
from services.yd import braiding, braiding_matrix, verify_yd

logger = logging.getLogger(__name__)


class _Checklist:
    def __init__(self) -> None:
        self.checks: list[CertificateCheck] = []

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(CertificateCheck(name=name, passed=bool(passed), detail=detail))
        return bool(passed)

    def run(self, name: str, check: Callable[[], tuple[bool, str]]) -> bool:
        try:
            passed, detail = check()
        except CoveringNicholsError as e:
            passed, detail = False, f"{type(e).__name__}: {e.message}"
        return self.add(name, passed, detail)

    def certificate(self) -> Certificate:
        return Certificate(passed=all(c.passed for c in self.checks), checks=self.checks)


def certify(bundle: CoveringBundle, oracle_degree: int | None = None, threads: int | None = None) -> Certificate:
    """Checklist for a covering bundle.

    Args:
        bundle: Serialized covering.
        oracle_degree: When given, also compare the oracle prefix of the
            covering module with the serialized Hilbert coefficients.
        threads: Oracle worker threads; defaults to the configured count.

    Returns:
        One named check per invariant; later checks are skipped when the
        group or the modules cannot be loaded.
    """
    checklist = _Checklist()
    try:
        extension = bundle.group.resolve()
    except CoveringNicholsError as e:
        checklist.add("cocycle", False, e.message)
        return checklist.certificate()
    checklist.run("cocycle", lambda: (validate_cocycle(extension.base, extension.cocycle), "normalized 2-cocycle"))

    def claim_two() -> tuple[bool, str]:
        bad = claim_two_violations(extension)
        return not bad, f"{len(bad)} offending pairs"

    checklist.run("commutator identity", claim_two)

    try:
        base = bundle.base.to_module()
        covering = bundle.covering.to_module(extension)
    except CoveringNicholsError as e:
        checklist.add("modules", False, e.message)
        return checklist.certificate()

    def yd() -> tuple[bool, str]:
        report = verify_yd(covering)
        return report.valid, "; ".join(report.violations[:3])

    def yang_baxter() -> tuple[bool, str]:
        m = covering.dimension
        try:
            return braiding(covering).satisfies_yang_baxter(), f"signed braiding, m={m}"
        except UnsupportedError:
            C, identity = braiding_matrix(covering), np.eye(m)
            c1, c2 = np.kron(C, identity), np.kron(identity, C)
            return np.allclose(c1 @ c2 @ c1, c2 @ c1 @ c2), f"dense braiding, m={m}"

    def braiding_equality() -> tuple[bool, str]:
        B = np.asarray(bundle.basis_change, dtype=np.int64)
        kron = np.kron(B, B)
        same = np.allclose(kron @ braiding_matrix(covering), braiding_matrix(base) @ kron)
        return same, "covering braiding in the y-basis equals the base braiding"

    def node_tags() -> tuple[bool, str]:
        wrong = []
        for orbit, tag in zip(bundle.orbits, bundle.node_tags):
            central = extension.section(base.degrees[orbit[0]]) in extension.group.center
            if central != (tag == INERT):
                wrong.append(str(orbit))
        return not wrong and len(bundle.orbits) == len(bundle.node_tags), ", ".join(wrong)

    def indecomposable() -> tuple[bool, str]:
        generates = extension.group.generates(covering.degrees)
        if extension.stem and not generates:
            return False, "degrees of a stem extension do not generate G"
        return generates == bundle.indecomposable, f"degrees generate G: {generates}"

    def folded_type() -> tuple[bool, str]:
        cartan = cartan_from_q(base.q_matrix())
        folded = fold(cartan, bundle.orbits)
        label = type_label(folded)
        same = cartan.tolist() == bundle.cartan and folded.tolist() == bundle.folded_cartan
        return same and label == bundle.folded_type, f"{type_label(cartan)} -> {label}"

    def hilbert() -> tuple[bool, str]:
        rederived = covering_module(base, bundle.symmetry, extension)
        poly = bundle.hilbert.to_poly()
        same = rederived.hilbert.factors == poly.factors and list(poly.coefficients) == bundle.hilbert.coefficients
        if all(N == 2 for N, _, _ in poly.factors):
            roots = positive_roots(CartanMatrix(np.asarray(bundle.cartan))).size
            same = same and poly.at_one() == 2**roots
            return same, f"H(1) = 2^{roots}"
        return same, f"H(1) = {poly.at_one()}"

    checklist.run("YD condition", yd)
    checklist.run("Yang-Baxter", yang_baxter)
    checklist.run("braiding equality", braiding_equality)
    checklist.run("node classification", node_tags)
    checklist.run("indecomposability", indecomposable)
    checklist.run("folded type", folded_type)
    checklist.run("Hilbert series", hilbert)

    if oracle_degree is not None:

        def oracle() -> tuple[bool, str]:
            observed = hilbert_prefix(covering, oracle_degree, threads)
            expected = list(bundle.hilbert.to_poly().prefix(oracle_degree))
            return observed == expected, f"observed {observed}, expected {expected}"

        checklist.run("oracle prefix", oracle)

    certificate = checklist.certificate()
    logger.info(
        "Certificate: type=%s passed=%s failed=%s",
        bundle.folded_type,
        certificate.passed,
        [c.name for c in certificate.checks if not c.passed],
    )
    return certificate


def check_example(example_id: str, degree: int | None = None, threads: int | None = None) -> ExampleCheck:
    """Oracle prefix of a registered example against its expected series, plus the covering certificate."""
    bundle = worked_example(example_id)
    degree = bundle.spec.check_degree if degree is None else degree
    observed = hilbert_prefix(bundle.module, degree, threads)
    expected = list(bundle.expected.prefix(degree))
    certificate = certify(CoveringBundle.from_result(bundle.covering))
    passed = observed == expected and certificate.passed
    logger.info("Example checked: id=%s degree=%s passed=%s", example_id, degree, passed)
    return ExampleCheck(
        id=example_id,
        degree=degree,
        expected=expected,
        observed=observed,
        passed=passed,
        certificate=certificate,
    )
