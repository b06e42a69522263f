import itertools
from fractions import Fraction

import pytest

from conftest import freq_exact
from vsq import levels
from vsq.errors import SameRole, UnknownLevel, UnknownScheme
from vsq.levels import PhysLevel


@pytest.fixture
def d():
    return levels.builtin_pr_laf3()


class TestDataset:
    def test_3h4_splittings(self, d):
        assert d.term("3H4").splittings() == [8.47, 16.7]

    def test_3p0_splittings(self, d):
        assert d.term("3P0").splittings() == [0.45, 0.72]

    def test_cumulative(self, d):
        assert d.term("3P0").offset("5/2") == 1.17
        assert d.term("3H4").offset("5/2") == 25.17

    def test_anchors(self, d):
        assert {t.label: t.anchor_nm for t in d.terms} == {
            "3H4": None, "3P0": 477.7, "1D2": 592.5, "3P1": 450.0, "3H6": 240.0,
        }

    def test_unladdered_terms(self, d):
        for label in ("1D2", "3P1", "3H6"):
            assert d.term(label).sublevels == ()

    def test_duplicate_labels(self):
        with pytest.raises(ValueError):
            levels.SpectroscopicDataset((levels.Term("3H4"), levels.Term("3H4")))

    def test_nonmonotone_ladder(self):
        with pytest.raises(ValueError):
            levels.Term("X", 500.0, (levels.Sublevel("1/2", 0.0), levels.Sublevel("3/2", 0.0)))

    def test_json_roundtrip(self, d):
        d2 = levels.SpectroscopicDataset.from_json(d.to_json())
        assert d2 == d
        for t in d.terms:
            for sub in [None] + [s.mI for s in t.sublevels]:
                lvl = PhysLevel(t.label, sub)
                assert abs(levels.level_frequency(d, lvl) - levels.level_frequency(d2, lvl)) <= 1e-6

    def test_file_schema(self, d):
        rec = next(r for r in d.to_dict()["terms"] if r["label"] == "3P0")
        assert rec == {
            "label": "3P0",
            "anchor_nm": 477.7,
            "sublevels": [
                {"mI": "1/2", "offset_mhz": 0.0},
                {"mI": "3/2", "offset_mhz": 0.45},
                {"mI": "5/2", "offset_mhz": 1.17},
            ],
        }

    def test_env_override(self, d, tmp_path, monkeypatch):
        doc = d.to_dict()
        for rec in doc["terms"]:
            if rec["label"] == "3P0":
                rec["anchor_nm"] = 500.0
        path = tmp_path / "ds.json"
        path.write_text(levels.json.dumps(doc), encoding="utf-8")
        monkeypatch.setenv("VSQ_DATASET", str(path))
        assert levels.load_dataset().term("3P0").anchor_nm == 500.0
        monkeypatch.delenv("VSQ_DATASET")
        assert levels.load_dataset() == d


class TestLevelFrequency:
    def test_origin(self, d):
        assert levels.level_frequency(d, PhysLevel("3H4", "1/2")) == 0.0

    def test_3p0(self, d):
        f = levels.level_frequency(d, PhysLevel("3P0"))
        assert abs(f - 6.27575e14) <= 5e9
        assert abs(f / float(freq_exact(477.7)) - 1) <= 1e-12

    def test_1d2(self, d):
        assert abs(levels.level_frequency(d, PhysLevel("1D2")) / float(freq_exact(592.5)) - 1) <= 1e-12

    def test_sublevel_offset(self, d):
        f = levels.level_frequency(d, PhysLevel("3P0", "3/2"))
        assert abs(f - float(freq_exact(477.7) + Fraction("0.45") * 10**6)) <= 0.25

    def test_unknown_term(self, d):
        with pytest.raises(UnknownLevel):
            levels.level_frequency(d, PhysLevel("4F3"))

    def test_sublevel_on_unladdered(self, d):
        with pytest.raises(UnknownLevel):
            levels.level_frequency(d, PhysLevel("1D2", "1/2"))


class TestSchemes:
    def test_fig3(self):
        s = levels.scheme("fig3")
        assert [str(l) for l in s.assignment] == ["3H4(lowest)", "3H6(lowest)", "1D2(lowest)", "3P0(lowest)"]
        assert s.readout_term == "3P1"

    def test_fig4(self):
        s = levels.scheme("fig4")
        assert [str(l) for l in s.assignment] == ["3H4(lowest)", "3P0(1/2)", "3P0(3/2)", "3P0(5/2)"]

    def test_unknown(self):
        with pytest.raises(UnknownScheme):
            levels.scheme("fig9")

    def test_listed_transitions_by_name(self, d):
        m3 = levels.match_listed_transitions(levels.scheme("fig3"), d)
        named3 = {p: f"{a.term}<->{b.term}" for p, (a, b) in m3.items()}
        assert named3 == {
            (0, 1): "3H4<->3H6",
            (2, 3): "1D2<->3P0",
            (1, 3): "3H6<->3P0",
            (0, 2): "3H4<->1D2",
        }
        m4 = levels.match_listed_transitions(levels.scheme("fig4"), d)
        named4 = {p: f"{a}<->{b}" for p, (a, b) in m4.items()}
        assert named4 == {
            (0, 1): "3H4(lowest)<->3P0(1/2)",
            (0, 2): "3H4(lowest)<->3P0(3/2)",
            (2, 3): "3P0(3/2)<->3P0(5/2)",
            (1, 3): "3P0(1/2)<->3P0(5/2)",
        }


class TestTransitionFrequency:
    def test_fig4_rf(self, d):
        s = levels.scheme("fig4")
        assert levels.transition_frequency(s, d, (2, 3)) == 7.2e5
        assert levels.transition_frequency(s, d, (1, 3)) == 1.17e6
        assert levels.transition_frequency(s, d, (1, 2)) == 4.5e5

    def test_fig3_optical(self, d):
        s = levels.scheme("fig3")
        f = levels.transition_frequency(s, d, (1, 3))
        assert abs(f / float(freq_exact(240) - freq_exact(477.7)) - 1) <= 1e-12
        assert abs(f - 6.21561e14) <= 1e9

    def test_same_role(self, d):
        with pytest.raises(SameRole):
            levels.transition_frequency(levels.scheme("fig4"), d, (2, 2))

    @pytest.mark.parametrize("name", ["fig3", "fig4"])
    def test_symmetric_positive(self, d, name):
        s = levels.scheme(name)
        for i, j in itertools.permutations(range(4), 2):
            f = levels.transition_frequency(s, d, (i, j))
            assert f > 0 and f == levels.transition_frequency(s, d, (j, i))


class TestValidate:
    def test_fig4(self, d):
        rep = levels.validate(levels.scheme("fig4"), d, 1e4)
        assert rep.passed and rep.distinct
        assert abs(rep.min_separation - 4.5e5) <= 0.25
        assert rep.rf == {(0, 1): False, (2, 3): True, (0, 2): False, (1, 3): True}
        assert rep.optical[(0, 1)] and rep.optical[(0, 2)]

    def test_fig3(self, d):
        rep = levels.validate(levels.scheme("fig3"), d)
        assert rep.passed
        assert all(f > 1e14 for f in rep.carriers.values())
        assert not any(rep.rf.values())

    def test_duplicate(self, d):
        s = levels.LevelScheme("dup", (PhysLevel("3H4"), PhysLevel("3P0", "1/2"), PhysLevel("3P0", "1/2"), PhysLevel("3P0", "5/2")))
        rep = levels.validate(s, d)
        assert not rep.passed and not rep.distinct
        assert any("duplicate level" in e for e in rep.errors)

    def test_lowest_alias_is_duplicate(self, d):
        s = levels.LevelScheme("dup", (PhysLevel("3H4"), PhysLevel("3H4", "1/2"), PhysLevel("1D2"), PhysLevel("3P0")))
        assert not levels.validate(s, d).passed

    def test_unresolvable(self, d):
        rep = levels.validate(levels.scheme("fig4"), d, min_sep=5e5)
        assert not rep.passed

    def test_ground_not_lowest(self, d):
        s = levels.LevelScheme("inv", (PhysLevel("3P0", "5/2"), PhysLevel("3P0", "1/2"), PhysLevel("3P0", "3/2"), PhysLevel("1D2")))
        rep = levels.validate(s, d)
        assert not rep.ground_lowest and not rep.passed

    def test_min_sep_positive(self, d):
        with pytest.raises(ValueError):
            levels.validate(levels.scheme("fig4"), d, min_sep=0)
