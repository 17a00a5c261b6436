#!/usr/bin/env python3
"""Benchmark the compiled lexer extension against the pure-Python twin.

The scanner is the hot kernel of a corpus run (every byte of every file goes
through it), so this is the speedup that matters end to end. Run:

    python benchmarks/bench_lexer.py [--files N] [--repeat R]
"""

import argparse
import time

from rugscan.frontend import _lexer_py

try:
    from rugscan.frontend import _lexer as _lexer_cy
except ImportError:
    _lexer_cy = None

from rugscan.frontend.parser import _Parser

CONTRACT = """
contract Sample%d {
    address public owner;
    uint256 public nextId;
    mapping(uint256 => address) internal holders;
    mapping(address => uint256) internal balances;

    modifier onlyOwner() {
        require(msg.sender == owner, "denied");
        _;
    }

    function mint(address to, uint256 quantity) external payable {
        require(msg.value >= quantity * 0.01 ether, "underpaid");
        for (uint256 i = 0; i < quantity; i++) {
            holders[nextId] = to;
            balances[to] += 1;
            nextId += 1;
        }
    }

    function withdraw() external onlyOwner {
        payable(owner).transfer(address(this).balance);
    }

    function tokenURI(uint256 tokenId) external pure returns (string memory) {
        return "ipfs://sample/metadata.json";
    }
}
"""


def build_corpus(files: int) -> str:
    return "pragma solidity ^0.8.0;\n" + "".join(CONTRACT % i for i in range(files))


def time_scan(scan, source: str, repeat: int) -> float:
    scan(source)  # warm up
    best = float("inf")
    for _ in range(repeat):
        started = time.perf_counter()
        scan(source)
        best = min(best, time.perf_counter() - started)
    return best


def time_parse(scan, source: str, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        started = time.perf_counter()
        tokens = scan(source)
        _Parser(tokens, source, "bench.sol").parse_source_unit()
        best = min(best, time.perf_counter() - started)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--files", type=int, default=300, help="synthetic contracts to concatenate")
    parser.add_argument("--repeat", type=int, default=5, help="timing repetitions (best-of)")
    args = parser.parse_args()

    source = build_corpus(args.files)
    mb = len(source) / 1e6
    tokens = len(_lexer_py.scan(source))
    print(f"corpus: {args.files} contracts, {mb:.2f} MB, {tokens} tokens\n")

    pure_scan = time_scan(_lexer_py.scan, source, args.repeat)
    print(f"scan  pure-python : {pure_scan * 1000:8.1f} ms  {mb / pure_scan:6.1f} MB/s")
    if _lexer_cy is not None:
        cy_scan = time_scan(_lexer_cy.scan, source, args.repeat)
        print(f"scan  compiled    : {cy_scan * 1000:8.1f} ms  {mb / cy_scan:6.1f} MB/s")
        print(f"scan  speedup     : {pure_scan / cy_scan:8.2f}x")
        assert _lexer_cy.scan(source) == _lexer_py.scan(source), "twins diverged"
    else:
        print("scan  compiled    : extension not built (pip install -e . with cython)")

    print()
    pure_total = time_parse(_lexer_py.scan, source, args.repeat)
    print(f"lex+parse pure    : {pure_total * 1000:8.1f} ms")
    if _lexer_cy is not None:
        cy_total = time_parse(_lexer_cy.scan, source, args.repeat)
        print(f"lex+parse compiled: {cy_total * 1000:8.1f} ms")
        print(f"end-to-end speedup: {pure_total / cy_total:8.2f}x")


if __name__ == "__main__":
    main()
