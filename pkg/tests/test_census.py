from heapcurve.census import CensusConfig, CurveConfig, run_census


def test_census_small():
    cfg = CensusConfig(curves=(CurveConfig(5, -1, 0), CurveConfig(7, 3, 5)), depth=1, samples=500)
    rows = run_census(cfg)
    assert [(r.points, r.endos) for r in rows] == [(8, 32), (7, 49)]
    for r in rows:
        assert r.closed and r.truss and r.retract_ring
        assert not r.composition_ring
        assert r.failures == []
        assert r.to_json()["curve"] == r.curve


def test_curve_config_extension():
    E = CurveConfig(5, -1, 0, ext_nonresidue=2).build()
    assert len(E.points) == 32
