import pytest

from rugscan.config import (
    build_run_config,
    load_manifest,
    read_config_file,
)
from rugscan.detectors import PatternKind
from rugscan.errors import ManifestError
from rugscan.frontend.versions import Version
from rugscan.risk import Tier


def test_defaults():
    config = build_run_config()
    assert config.workers == 1
    assert config.out_format == "json"
    assert config.sanitizer.supported_version_floor == Version(0, 4, 0)
    assert config.sanitizer.supported_version_ceiling == Version(0, 8, 19)
    assert config.detector.deprecated_below == Version(0, 8, 0)
    assert config.fail_on_tier is None


def test_config_file_roundtrip(tmp_path):
    cfg = tmp_path / "rugscan.cfg"
    cfg.write_text(
        """
        # analyzer settings
        workers = 4
        strict_nft = true
        owner_modifiers = onlyOwner, onlyDeployer
        deprecated_below = 0.7.0
        detectors = selfdestruct, delegatecall
        fail_on_tier = high
        """
    )
    config = build_run_config(read_config_file(cfg))
    assert config.workers == 4
    assert config.strict_nft is True
    assert config.detector.owner_modifiers == ("onlyOwner", "onlyDeployer")
    assert config.detector.deprecated_below == Version(0, 7, 0)
    assert config.detector.enabled == frozenset({PatternKind.SELF_DESTRUCT, PatternKind.DELEGATE_CALL})
    assert config.fail_on_tier == Tier.HIGH


def test_cli_overrides_beat_config_file(tmp_path):
    cfg = tmp_path / "rugscan.cfg"
    cfg.write_text("workers = 4\nformat = csv\n")
    config = build_run_config(read_config_file(cfg), {"workers": 2, "format": None})
    assert config.workers == 2  # CLI wins
    assert config.out_format == "csv"  # None override leaves file value


def test_bad_config_values_raise():
    with pytest.raises(ValueError):
        build_run_config({"workers": "zero"})
    with pytest.raises(ValueError):
        build_run_config({"nonsense_key": "1"})
    with pytest.raises(ValueError):
        build_run_config({"detectors": "explosions"})
    with pytest.raises(ValueError):
        build_run_config({}, {"workers": 0})


def test_malformed_config_line(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("this line has no equals\n")
    with pytest.raises(ValueError):
        read_config_file(cfg)


def test_load_manifest(tmp_path):
    manifest = tmp_path / "m.csv"
    manifest.write_text(
        "file,address,compiler_version,optimization\n"
        "a.sol,0xC1Aa00000000000000000000000000000000082F,v0.8.6+commit.11564f7e,true\n"
        "b.sol,0xB000000000000000000000000000000000000001,v0.4.24,false\n"
    )
    entries = load_manifest(manifest)
    assert entries["a.sol"].address.startswith("0xC1Aa")
    assert entries["a.sol"].optimization is True
    assert entries["b.sol"].optimization is False


def test_empty_manifest(tmp_path):
    manifest = tmp_path / "empty.csv"
    manifest.write_text("")
    assert load_manifest(manifest) == {}


def test_manifest_duplicate_file_reports_row(tmp_path):
    manifest = tmp_path / "dup.csv"
    manifest.write_text(
        "file,address,compiler_version,optimization\n"
        "a.sol,0x1,v1,true\n"
        "a.sol,0x2,v2,false\n"
    )
    with pytest.raises(ManifestError) as exc:
        load_manifest(manifest)
    assert exc.value.row == 3


def test_manifest_malformed_row(tmp_path):
    manifest = tmp_path / "bad.csv"
    manifest.write_text("file,address,compiler_version,optimization\nonly,three,cols\n")
    with pytest.raises(ManifestError) as exc:
        load_manifest(manifest)
    assert exc.value.row == 2


def test_manifest_bad_header(tmp_path):
    manifest = tmp_path / "hdr.csv"
    manifest.write_text("filename,addr\nx,y\n")
    with pytest.raises(ManifestError):
        load_manifest(manifest)
