import pytest

from tetsym import (
    DSEQ_236_2222,
    DSEQ_O4,
    RIGID_CUSP_236,
    DestinationSequence,
    automorphisms,
    covers,
    cusp_covers,
    cusp_seqs,
    validate,
)

SINGLE = DestinationSequence.from_list([0, 0, 0, 0], name="single")


def test_reference_sequence_validates():
    assert validate(DSEQ_236_2222).ok
    assert validate(DSEQ_O4).ok


def test_single_tetrahedron_validates():
    assert validate(SINGLE).ok


def test_f_pairing_violation_detected():
    # entries[4 * 1 + 2] must point back at 0 for the f-slots to pair up
    seq = DestinationSequence.from_list([0, 1, 1, 0, 1, 0, 1, 1])
    report = validate(seq)
    assert not report.ok
    assert any(v["family"] == "f-pairing" and v["index"] == 0
               for v in report.violations)


def test_entry_bounds_checked():
    with pytest.raises(ValueError):
        DestinationSequence.from_list([0, 0, 0, 2])
    with pytest.raises(ValueError):
        DestinationSequence.from_list([0, 0, 0])


def test_reference_cusp_classes():
    classes = cusp_seqs(DSEQ_236_2222).classes
    assert (0, 1, 3, 4) in classes
    assert (2, 5, 6, 7, 8, 9) in classes
    assert len(classes) == 2
    assert tuple(RIGID_CUSP_236) in classes


def test_single_tetrahedron_cusp_classes():
    assert cusp_seqs(SINGLE).classes == ((0,),)


def test_identity_cover_present():
    for seq in (SINGLE, DSEQ_O4, DSEQ_236_2222):
        maps = covers(seq, seq)
        assert tuple(range(seq.n)) in {c.phi for c in maps}


def test_automorphisms_form_group():
    auts = automorphisms(DSEQ_O4)
    perms = {a.phi for a in auts}
    assert tuple(range(DSEQ_O4.n)) in perms
    for a in perms:
        inverse = tuple(sorted(range(len(a)), key=lambda i: a[i]))
        assert inverse in perms
        for b in perms:
            composed = tuple(a[b[i]] for i in range(len(b)))
            assert composed in perms


def test_cover_composition_closure():
    ups = covers(DSEQ_236_2222, DSEQ_236_2222)
    phis = {c.phi for c in ups}
    for a in ups:
        for b in ups:
            composed = tuple(b.phi[a.phi[i]] for i in range(DSEQ_236_2222.n))
            assert composed in phis


def test_cusp_covers_of_identity():
    seq = DSEQ_236_2222
    part = cusp_seqs(seq)
    ident = [c for c in covers(seq, seq) if c.phi == tuple(range(seq.n))][0]
    pairs = cusp_covers(ident, part, part)
    for up, down in pairs:
        assert tuple(up) == tuple(down)


def test_cover_degree():
    ident = [c for c in covers(DSEQ_O4, DSEQ_O4)
             if c.phi == tuple(range(DSEQ_O4.n))][0]
    assert ident.degree(DSEQ_O4.n) == 1
