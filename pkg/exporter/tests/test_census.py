from tetexport import census, triang

FIG8_SIG = "cPcbbbiht"
SISTER_SIG = "cPcbbbdxm"


def test_no_small_triangulations():
    assert census.enumerate_tables(1) == []
    assert census.enumerate_tables(3) == []


def test_two_tetrahedra_exactly_census_pair():
    tabs = census.enumerate_tables(2)
    assert [sig for sig, _ in tabs] == [SISTER_SIG, FIG8_SIG]
    for sig, table in tabs:
        triang.validate(table)
        assert census.canonical_sig(table) == sig


def test_four_tetrahedra_counts():
    tabs = census.enumerate_tables(4)
    assert len(tabs) == 4
    cusp_counts = sorted(len(triang.cusp_classes(t)) for _, t in tabs)
    assert cusp_counts == [1, 1, 2, 2]
    assert any(sig == "eLMkbcddddedde" for sig, _ in tabs)


def test_enumeration_is_sorted_and_duplicate_free():
    tabs = census.enumerate_tables(4)
    sigs = [sig for sig, _ in tabs]
    assert sigs == sorted(sigs)
    assert len(set(sigs)) == len(sigs)
