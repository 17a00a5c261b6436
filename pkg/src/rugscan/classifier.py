"""Three-stage NFT relevance filter.

Stage 1 matches canonical ERC-721/1155 function signatures, stage 2 matches
inherited base names (substring, so ERC721Enumerable hits ERC721), stage 3
matches keywords case-insensitively over contract names, function names and
string literals. Comments never fire: they are discarded at lexing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .frontend.nodes import SourceUnit

DEFAULT_SIGNATURES = frozenset(
    {
        # ERC-721
        "ownerOf(uint256)",
        "balanceOf(address)",
        "tokenURI(uint256)",
        "safeTransferFrom(address,address,uint256)",
        "safeTransferFrom(address,address,uint256,bytes)",
        "supportsInterface(bytes4)",
        # ERC-1155
        "uri(uint256)",
        "balanceOf(address,uint256)",
        "safeTransferFrom(address,address,uint256,uint256,bytes)",
    }
)

DEFAULT_BASES = frozenset({"ERC721", "ERC1155", "Ownable", "AccessControl"})

DEFAULT_KEYWORDS = frozenset({"NFT", "mint", "tokenId", "URI", "burn", "OpenSea", "Rarible"})


@dataclass(frozen=True)
class Catalogs:
    signatures: frozenset[str] = DEFAULT_SIGNATURES
    bases: frozenset[str] = DEFAULT_BASES
    keywords: frozenset[str] = DEFAULT_KEYWORDS


@dataclass
class NftClassification:
    is_nft_relevant: bool
    matched_signatures: set[str]
    matched_bases: set[str]  # declared base names that hit the catalog
    matched_keywords: set[str]
    stage_hits: set[int]  # subset of {1, 2, 3}

    def to_record(self) -> dict:
        return {
            "is_nft_relevant": self.is_nft_relevant,
            "matched_signatures": sorted(self.matched_signatures),
            "matched_bases": sorted(self.matched_bases),
            "matched_keywords": sorted(self.matched_keywords),
            "stages": sorted(self.stage_hits),
        }


def classify(unit: SourceUnit, catalogs: Catalogs = Catalogs(), strict: bool = False) -> NftClassification:
    """Classify a parsed file; strict mode requires signature or base evidence
    (keyword-only hits are too permissive for curated corpora)."""
    matched_signatures: set[str] = set()
    matched_bases: set[str] = set()
    matched_keywords: set[str] = set()

    for contract in unit.contracts:
        for func in contract.functions:
            if func.canonical_signature in catalogs.signatures:
                matched_signatures.add(func.canonical_signature)
        for base in contract.bases:
            if any(fragment in base for fragment in catalogs.bases):
                matched_bases.add(base)

    keyword_haystacks = [c.name for c in unit.contracts]
    keyword_haystacks += [f.name for c in unit.contracts for f in c.functions if f.name]
    keyword_haystacks += unit.string_literals
    lowered = [(h, h.lower()) for h in keyword_haystacks]
    for keyword in catalogs.keywords:
        kw = keyword.lower()
        if any(kw in low for _, low in lowered):
            matched_keywords.add(keyword)

    stage_hits: set[int] = set()
    if matched_signatures:
        stage_hits.add(1)
    if matched_bases:
        stage_hits.add(2)
    if matched_keywords:
        stage_hits.add(3)

    if strict:
        relevant = bool(stage_hits & {1, 2})
    else:
        relevant = bool(stage_hits)

    return NftClassification(
        is_nft_relevant=relevant,
        matched_signatures=matched_signatures,
        matched_bases=matched_bases,
        matched_keywords=matched_keywords,
        stage_hits=stage_hits,
    )
