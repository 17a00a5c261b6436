from rugscan.classifier import Catalogs, DEFAULT_SIGNATURES, classify
from rugscan.frontend import parse


def classify_src(source, strict=False):
    return classify(parse(source, "c.sol"), strict=strict)


ERC721_MIN = """
pragma solidity ^0.8.0;
contract Art {
    function ownerOf(uint256 tokenId) external view returns (address) {}
    function tokenURI(uint256 tokenId) external view returns (string memory) {}
}
"""


def test_stage1_signature_detection():
    result = classify_src(ERC721_MIN)
    assert result.is_nft_relevant
    assert 1 in result.stage_hits
    assert result.matched_signatures == {"ownerOf(uint256)", "tokenURI(uint256)"}


def test_negative_vault():
    result = classify_src("pragma solidity ^0.8.0;\ncontract Vault { function sweep() external {} }")
    assert not result.is_nft_relevant
    assert result.stage_hits == set()


def test_stage2_substring_base_match():
    result = classify_src("pragma solidity ^0.8.0;\ncontract MyDrop is ERC721A {}")
    assert result.is_nft_relevant
    assert result.stage_hits == {2}
    assert result.matched_bases == {"ERC721A"}
    # substring-match oracle over declared base names
    unit = parse("contract X is ERC721Enumerable, ERC1155Supply, Context {}", "x.sol")
    expected = {
        b
        for b in unit.contracts[0].bases
        if any(frag in b for frag in ("ERC721", "ERC1155", "Ownable", "AccessControl"))
    }
    got = classify(unit).matched_bases
    assert got == expected == {"ERC721Enumerable", "ERC1155Supply"}


def test_erc1155_signatures_recognized():
    source = """
    pragma solidity ^0.8.0;
    contract Multi {
        function uri(uint256 id) external view returns (string memory) {}
        function balanceOf(address account, uint256 id) external view returns (uint256) {}
        function safeTransferFrom(address a, address b, uint256 id, uint256 amt, bytes calldata d) external {}
    }
    """
    result = classify_src(source)
    assert result.matched_signatures == {
        "uri(uint256)",
        "balanceOf(address,uint256)",
        "safeTransferFrom(address,address,uint256,uint256,bytes)",
    }
    assert result.matched_signatures <= DEFAULT_SIGNATURES


def test_stage3_keywords_in_names_and_strings():
    source = """
    pragma solidity ^0.8.0;
    contract Sale {
        string public listing = "available on OpenSea";
        function startDate() external pure returns (uint256) { return 0; }
    }
    """
    result = classify_src(source)
    assert result.stage_hits == {3}
    assert "OpenSea" in result.matched_keywords


def test_keywords_never_fire_on_comments():
    source = """
    pragma solidity ^0.8.0;
    // this NFT mint tokenId URI comment must not count
    /* neither OpenSea nor Rarible here */
    contract Plain { uint256 internal v; function set(uint256 x) external { v = x; } }
    """
    result = classify_src(source)
    assert not result.is_nft_relevant


def test_strict_mode_requires_signature_or_base():
    keyword_only = """
    pragma solidity ^0.8.0;
    contract Teaser { string internal s = "big NFT drop soon"; }
    """
    assert classify_src(keyword_only).is_nft_relevant
    assert not classify_src(keyword_only, strict=True).is_nft_relevant
    assert classify_src(ERC721_MIN, strict=True).is_nft_relevant


def test_evidence_soundness():
    unit = parse(ERC721_MIN, "a.sol")
    result = classify(unit)
    actual_signatures = {
        f.canonical_signature for c in unit.contracts for f in c.functions
    }
    assert result.matched_signatures <= actual_signatures


def test_stage_monotonicity():
    """Adding a recognized signature never flips relevant -> not relevant."""
    base = "pragma solidity ^0.8.0;\ncontract G { function f() external {} %s }"
    without = classify_src(base % "")
    with_sig = classify_src(base % "function ownerOf(uint256 i) external view returns (address) {}")
    assert with_sig.is_nft_relevant >= without.is_nft_relevant
    assert with_sig.is_nft_relevant


def test_catalog_overrides():
    catalogs = Catalogs(keywords=frozenset({"Zorp"}))
    unit = parse('pragma solidity ^0.8.0;\ncontract Z { string s = "zorp inside"; }', "z.sol")
    assert classify(unit, catalogs).matched_keywords == {"Zorp"}
