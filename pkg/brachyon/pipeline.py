# ABOUTME: Pipeline orchestration for classifying solutions over a brace
# ABOUTME: Builds every enumerated spec with bounded concurrency, then dedupes, certifies and catalogues the results

import asyncio
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .braces import SkewBrace
from .certificates import check_iso_certificate, find_iso_certificate
from .config import Config
from .constructor import ConstructionSpec, build_solution, enumerate_specs
from .db import store_classification
from .serialization import to_document
from .solutions import Solution, solution_isomorphism

logger = logging.getLogger(__name__)


@dataclass
class ClassificationResult:
    """Kept solutions in canonical order, each with the first spec (in enumeration order) that built it."""

    brace: SkewBrace
    solutions: List[Solution] = field(default_factory=list)
    specs: List[ConstructionSpec] = field(default_factory=list)
    built: int = 0
    certified: int = 0
    catalog_id: Optional[int] = None


class ClassificationPipeline:
    """Orchestrates spec building with concurrency control."""

    def __init__(self, config: Config, certify: bool = True):
        """
        Initialize the classification pipeline.

        Args:
            config: Application configuration
            certify: Whether to look for isomorphism certificates between merged specs
        """
        self.config = config
        self.certify = certify
        self.semaphore = asyncio.Semaphore(max(1, config.jobs))

    async def classify(
        self,
        brace: SkewBrace,
        max_size: Optional[int] = None,
        name: str = "brace",
    ) -> ClassificationResult:
        """Build all specs over the brace and keep one solution per isomorphism class."""
        limit = self.config.max_solution_size if max_size is None else max_size
        specs = list(
            enumerate_specs(
                brace,
                max_families=self.config.max_families_per_orbit,
                subgroup_cap=self.config.max_subgroup_order,
                max_size=limit,
            )
        )
        logger.info(f"Building {len(specs)} specs over a brace of order {brace.order} with {self.config.jobs} jobs")

        tasks = [self._build_single_spec(k, spec) for k, spec in enumerate(specs)]
        solutions = await asyncio.gather(*tasks)

        result = self._merge(brace, list(zip(solutions, specs)))
        logger.info(f"Kept {len(result.solutions)} of {result.built} solutions up to isomorphism")

        if self.config.catalog_path:
            result.catalog_id = self._store(name, result)
        return result

    async def _build_single_spec(self, index: int, spec: ConstructionSpec) -> Solution:
        async with self.semaphore:
            logger.debug(f"Building spec {index} (size {spec.size})")
            loop = asyncio.get_running_loop()
            try:
                built = await loop.run_in_executor(None, build_solution, spec)
            except Exception as e:
                logger.error(f"Building spec {index} failed: {e}", exc_info=True)
                raise
            return built.solution

    def _merge(self, brace: SkewBrace, pairs: List[Tuple[Solution, ConstructionSpec]]) -> ClassificationResult:
        result = ClassificationResult(brace, built=len(pairs))
        # stable sort keeps enumeration order among equal tables
        ordered = sorted(range(len(pairs)), key=lambda k: pairs[k][0].sort_key())
        for k in ordered:
            S, spec = pairs[k]
            match = None
            for kept, kept_spec in zip(result.solutions, result.specs):
                if kept.size == S.size and solution_isomorphism(kept, S) is not None:
                    match = kept_spec
                    break
            if match is None:
                result.solutions.append(S)
                result.specs.append(spec)
            elif self.certify:
                result.certified += self._corroborate(spec, match)
        return result

    def _corroborate(self, spec: ConstructionSpec, kept_spec: ConstructionSpec) -> int:
        cert = find_iso_certificate(spec, kept_spec)
        if cert is None:
            logger.debug("No isomorphism certificate found for a merged spec pair")
            return 0
        check_iso_certificate(spec, kept_spec, cert)
        return 1

    def _store(self, name: str, result: ClassificationResult) -> Optional[int]:
        try:
            docs = [to_document(spec) for spec in result.specs]
            return store_classification(self.config.catalog_path, name, result.brace, result.solutions, docs)
        except Exception as e:
            logger.error(f"Failed to store classification of {name!r}: {e}", exc_info=True)
            return None


def run_classification(
    brace: SkewBrace,
    config: Optional[Config] = None,
    max_size: Optional[int] = None,
    name: str = "brace",
    certify: bool = True,
) -> ClassificationResult:
    """Synchronous entry point around ClassificationPipeline.classify."""
    pipeline = ClassificationPipeline(config or Config(), certify=certify)
    return asyncio.run(pipeline.classify(brace, max_size=max_size, name=name))


def classify_solutions(
    brace: SkewBrace,
    config: Optional[Config] = None,
    max_size: Optional[int] = None,
    max_families: Optional[int] = None,
    subgroup_cap: Optional[int] = None,
) -> List[Solution]:
    """
    Pairwise non-isomorphic solutions built from every valid spec over the brace,
    sorted by (size, f table, g table). The output does not depend on config.jobs.
    """
    config = Config(**vars(config)) if config is not None else Config()
    if max_families is not None:
        config.max_families_per_orbit = max_families
    if subgroup_cap is not None:
        config.max_subgroup_order = subgroup_cap
    return run_classification(brace, config, max_size=max_size).solutions
