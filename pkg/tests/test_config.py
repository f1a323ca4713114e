import json

import pytest

from pedintent import DataError, PipelineConfig, load_config, save_config
from pedintent.config import config_from_dict


class TestPipelineConfig:
    def test_defaults(self):
        cfg = PipelineConfig()
        assert cfg.frame_width_px == 432
        assert cfg.horizon_s == 1.0
        assert cfg.velocity_window == 3
        assert cfg.phi_bin_edges == (60.0, 120.0)
        assert cfg.zone == (180.0, 300.0, 252.0, 432.0)
        assert cfg.tree_path is None

    def test_validation(self):
        with pytest.raises(ValueError):
            PipelineConfig(frame_width_px=0)
        with pytest.raises(ValueError):
            PipelineConfig(horizon_s=-1.0)
        with pytest.raises(ValueError):
            PipelineConfig(zone=(10.0, 10.0, 5.0, 20.0))
        with pytest.raises(ValueError):
            PipelineConfig(min_confidence=0.0)
        with pytest.raises(ValueError):
            PipelineConfig(phi_bin_edges=(120.0, 60.0))

    def test_with_overrides_skips_none(self):
        cfg = PipelineConfig().with_overrides(horizon_s=None, velocity_window=2)
        assert cfg.horizon_s == 1.0
        assert cfg.velocity_window == 2

    def test_geometry_and_discretization_views(self):
        cfg = PipelineConfig(speed_deadzone=2.5)
        assert cfg.geometry().width_px == 432
        assert cfg.discretization().speed_deadzone == 2.5


class TestConfigFile:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "cfg.json"
        cfg = PipelineConfig(horizon_s=2.0, velocity_window=5)
        save_config(cfg, path)
        assert load_config(path) == cfg

    def test_unknown_key_rejected(self):
        with pytest.raises(DataError) as exc:
            config_from_dict({"frame_width": 100})
        assert "frame_width" in str(exc.value)

    def test_bad_zone_shape_rejected(self):
        with pytest.raises(DataError):
            config_from_dict({"zone": [1, 2, 3]})

    def test_invalid_value_becomes_data_error(self):
        with pytest.raises(DataError):
            config_from_dict({"horizon_s": -5.0})

    def test_invalid_json_file(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{nope", encoding="utf-8")
        with pytest.raises(DataError):
            load_config(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError):
            load_config(tmp_path / "absent.json")

    def test_non_object_rejected(self, tmp_path):
        path = tmp_path / "arr.json"
        path.write_text(json.dumps([1, 2]), encoding="utf-8")
        with pytest.raises(DataError):
            load_config(path)
