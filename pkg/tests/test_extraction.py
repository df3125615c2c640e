"""Workspace composition: loading, extraction, placing, exporting."""

import random

import pytest

from ontocompo import (
    Cell,
    ConsistencyConflictError,
    DuplicateIdError,
    EXPORT_APP_ID,
    ExistingScreen,
    NewScreen,
    Predicate,
    PreconditionError,
    RelativeConstraint,
    RelativeLayout,
    Selection,
    TableLayout,
    UIFuncLink,
    UITaskLink,
    UnknownIdError,
    application_to_document,
    export_document,
    extend_task,
    extract,
    load_application,
    new_workspace,
    parse_application,
    place_in_screen,
    serialize_application,
    validate,
)
from conftest import fixture_text, random_application

R = Predicate.ON_THE_RIGHT_OF
B = Predicate.BELOW


@pytest.fixture
def insurance_ws(insurancec):
    ws = new_workspace()
    load_application(ws, insurancec)
    return ws


@pytest.fixture
def two_source_ws(insurancec, businessdir):
    ws = new_workspace()
    load_application(ws, insurancec)
    load_application(ws, businessdir)
    return ws


def account_screen(ws, manifest) -> str:
    """Run the account-screen extraction and return the new screen id."""
    ws.selection = extend_task(ws.store, Selection(("InsuranceCBirthDFC",)))
    return extract(ws, NewScreen(manifest["composedScreenName"]))


# ---------------------------------------------------------------------------
# loading


def test_load_rejects_duplicate_application_id(insurance_ws, insurancec):
    with pytest.raises(DuplicateIdError):
        load_application(insurance_ws, insurancec)
    assert len(insurance_ws.sources) == 1


def test_load_rejects_reserved_composed_id(insurance_ws, businessdir):
    businessdir.id = "composed"
    with pytest.raises(DuplicateIdError):
        load_application(insurance_ws, businessdir)


def test_failed_load_leaves_workspace_untouched(insurance_ws, businessdir):
    businessdir.links.append(UITaskLink("BusinessDirTitleLFC", "NoSuchTask"))
    before = len(insurance_ws.store)
    with pytest.raises(Exception):
        load_application(insurance_ws, businessdir)
    assert insurance_ws.sources[-1].id == "InsuranceC"
    assert len(insurance_ws.store) == before


# ---------------------------------------------------------------------------
# extraction


def test_extract_copies_only_subtree_roots(insurance_ws, manifest):
    screen_id = account_screen(insurance_ws, manifest)
    assert screen_id == "AccountScreen"
    screen = insurance_ws.composed.screens[0]
    assert screen.name == "AccountScreen"
    assert [c.id for c in screen.root.children] == ["InsuranceC.InsuranceCAccountInfoFC"]
    copied = screen.root.children[0]
    assert [c.id for c in copied.children] == [
        "InsuranceC.InsuranceCNameLFC",
        "InsuranceC.InsuranceCNameDFC",
        "InsuranceC.InsuranceCBirthLFC",
        "InsuranceC.InsuranceCBirthDFC",
        "InsuranceC.InsuranceCAddressLFC",
        "InsuranceC.InsuranceCAddressDFC",
    ]
    assert copied.label == "Account Information"
    assert insurance_ws.selection.items == ()


def test_extract_carries_links_tasks_and_functionalities(insurance_ws, manifest):
    account_screen(insurance_ws, manifest)
    composed = insurance_ws.composed

    links = [application_to_document(composed)["links"][i] for i in range(len(composed.links))]
    assert links == manifest["composedLinks"]

    tasks = {t.id: t for t in composed.tasks}
    assert set(tasks) == {"InsuranceC.DisplayAccountInfo", "InsuranceC.ManageAccount"}
    assert tasks["InsuranceC.DisplayAccountInfo"].parent == "InsuranceC.ManageAccount"
    assert tasks["InsuranceC.DisplayAccountInfo"].functionalities == [
        "InsuranceC.GetAccountDetails"
    ]
    assert tasks["InsuranceC.ManageAccount"].parent is None

    assert [f.id for f in composed.functionalities] == ["InsuranceC.GetAccountDetails"]


def test_extract_rewrites_interior_layout_as_constraints(insurance_ws, manifest):
    account_screen(insurance_ws, manifest)
    screen = insurance_ws.composed.screens[0]
    layout = screen.layouts["InsuranceC.InsuranceCAccountInfoFC"]
    assert isinstance(layout, RelativeLayout)
    assert len(layout.constraints) == 11
    assert RelativeConstraint(
        "InsuranceC.InsuranceCBirthLFC", B, "InsuranceC.InsuranceCNameLFC"
    ) in layout.constraints
    assert RelativeConstraint(
        "InsuranceC.InsuranceCNameDFC", R, "InsuranceC.InsuranceCNameLFC"
    ) in layout.constraints


def test_extract_updates_store(insurance_ws, manifest):
    before = len(insurance_ws.store)
    account_screen(insurance_ws, manifest)
    store = insurance_ws.store
    assert len(store) > before
    assert store.has(
        "InsuranceC.InsuranceCAccountInfoFC",
        Predicate.CONTAINS,
        "InsuranceC.InsuranceCBirthDFC",
    )
    assert store.has(
        "InsuranceC.InsuranceCBirthDFC",
        Predicate.LINKED_TO_TASK,
        "InsuranceC.DisplayAccountInfo",
    )


def test_extract_never_touches_sources(insurance_ws, manifest):
    pristine = fixture_text("insurancec.json")
    account_screen(insurance_ws, manifest)
    assert serialize_application(insurance_ws.sources[0]) == pristine


def test_reextraction_is_idempotent(insurance_ws, manifest):
    screen_id = account_screen(insurance_ws, manifest)
    snapshot = application_to_document(insurance_ws.composed)
    insurance_ws.selection = extend_task(insurance_ws.store, Selection(("InsuranceCBirthDFC",)))
    extract(insurance_ws, ExistingScreen(screen_id))
    assert application_to_document(insurance_ws.composed) == snapshot


def test_extract_into_unknown_screen(insurance_ws):
    insurance_ws.selection = Selection(("InsuranceCBirthDFC",))
    with pytest.raises(UnknownIdError):
        extract(insurance_ws, ExistingScreen("Nowhere"))


def test_extract_requires_selection(insurance_ws):
    with pytest.raises(PreconditionError):
        extract(insurance_ws, NewScreen("Empty"))


def test_screen_ids_stay_unique(insurance_ws):
    insurance_ws.selection = Selection(("InsuranceCBirthDFC",))
    first = extract(insurance_ws, NewScreen("Account Screen"))
    insurance_ws.selection = Selection(("InsuranceCNameLFC",))
    second = extract(insurance_ws, NewScreen("Account Screen"))
    assert (first, second) == ("AccountScreen", "AccountScreen2")


def test_extract_keeps_sibling_relations_between_roots(businessdir):
    ws = new_workspace()
    load_application(ws, businessdir)
    ws.selection = Selection(("BusinessDirSearchInputFC", "BusinessDirSearchBFC"))
    extract(ws, NewScreen("Sheet"))
    screen = ws.composed.screens[0]
    assert screen.layouts["SheetRoot"] == RelativeLayout(
        [
            RelativeConstraint(
                "BusinessDir.BusinessDirSearchBFC", R, "BusinessDir.BusinessDirSearchInputFC"
            )
        ]
    )


def test_extract_mixes_sources_without_cross_constraints(two_source_ws):
    two_source_ws.selection = Selection(("InsuranceCBirthDFC", "BusinessDirSearchBFC"))
    extract(two_source_ws, NewScreen("Mixed"))
    screen = two_source_ws.composed.screens[0]
    assert [c.id for c in screen.root.children] == [
        "InsuranceC.InsuranceCBirthDFC",
        "BusinessDir.BusinessDirSearchBFC",
    ]
    assert "MixedRoot" not in screen.layouts


# ---------------------------------------------------------------------------
# placing


TITLE = "BusinessDir.BusinessDirTitleLFC"
INPUT = "BusinessDir.BusinessDirSearchInputFC"
BUTTON = "BusinessDir.BusinessDirSearchBFC"


def sheet_workspace(businessdir, *components: str):
    ws = new_workspace()
    load_application(ws, businessdir)
    ws.selection = Selection(components)
    extract(ws, NewScreen("Sheet"))
    return ws


def test_place_replaces_the_pair_constraint(businessdir):
    ws = sheet_workspace(businessdir, "BusinessDirSearchInputFC", "BusinessDirSearchBFC")
    place_in_screen(ws, "Sheet", INPUT, B, BUTTON)
    layout = ws.composed.screens[0].layouts["SheetRoot"]
    assert layout.constraints == [RelativeConstraint(INPUT, B, BUTTON)]
    assert ws.store.has(INPUT, B, BUTTON)
    assert not ws.store.has(BUTTON, R, INPUT)


def test_place_conflict_changes_nothing(businessdir):
    # Three mutually constrained components are rigid: re-anchoring any one of
    # them contradicts the two constraints that stay behind.
    ws = sheet_workspace(
        businessdir, "BusinessDirTitleLFC", "BusinessDirSearchInputFC", "BusinessDirSearchBFC"
    )
    before = list(ws.composed.screens[0].layouts["SheetRoot"].constraints)
    assert before == [
        RelativeConstraint(BUTTON, B, TITLE),
        RelativeConstraint(BUTTON, R, INPUT),
        RelativeConstraint(INPUT, B, TITLE),
    ]
    with pytest.raises(ConsistencyConflictError):
        place_in_screen(ws, "Sheet", TITLE, B, INPUT)
    assert ws.composed.screens[0].layouts["SheetRoot"].constraints == before


def test_place_validates_endpoints(businessdir):
    ws = sheet_workspace(businessdir, "BusinessDirSearchInputFC", "BusinessDirSearchBFC")
    with pytest.raises(UnknownIdError):
        place_in_screen(ws, "Nowhere", BUTTON, R, INPUT)
    with pytest.raises(UnknownIdError):
        place_in_screen(ws, "Sheet", "Ghost", R, INPUT)
    with pytest.raises(PreconditionError):
        place_in_screen(ws, "Sheet", "BusinessDirTitleLFC", R, INPUT)


# ---------------------------------------------------------------------------
# exporting


def test_export_requires_a_screen():
    with pytest.raises(PreconditionError):
        export_document(new_workspace())


def test_export_concretizes_layouts(insurance_ws, manifest):
    account_screen(insurance_ws, manifest)
    exported = parse_application(export_document(insurance_ws))
    assert exported.id == EXPORT_APP_ID
    assert validate(exported) == []
    layout = exported.screens[0].layouts["InsuranceC.InsuranceCAccountInfoFC"]
    assert isinstance(layout, TableLayout)
    assert layout.cells == {
        "InsuranceC.InsuranceCNameLFC": Cell(0, 0),
        "InsuranceC.InsuranceCNameDFC": Cell(0, 1),
        "InsuranceC.InsuranceCBirthLFC": Cell(1, 0),
        "InsuranceC.InsuranceCBirthDFC": Cell(1, 1),
        "InsuranceC.InsuranceCAddressLFC": Cell(2, 0),
        "InsuranceC.InsuranceCAddressDFC": Cell(2, 1),
    }


def test_export_is_deterministic(insurance_ws, manifest):
    account_screen(insurance_ws, manifest)
    assert export_document(insurance_ws) == export_document(insurance_ws)


def test_export_leaves_workspace_editable(insurance_ws, manifest):
    account_screen(insurance_ws, manifest)
    export_document(insurance_ws)
    screen = insurance_ws.composed.screens[0]
    layout = screen.layouts["InsuranceC.InsuranceCAccountInfoFC"]
    assert isinstance(layout, RelativeLayout)


def test_export_reloads_as_a_source(insurance_ws, manifest):
    account_screen(insurance_ws, manifest)
    first = export_document(insurance_ws)

    ws = new_workspace()
    load_application(ws, parse_application(first))
    ws.selection = extend_task(ws.store, Selection(("InsuranceC.InsuranceCBirthDFC",)))
    extract(ws, NewScreen("AccountScreen"))
    second = export_document(ws)

    reexported = parse_application(second)
    assert reexported.id == EXPORT_APP_ID
    assert validate(reexported) == []
    inner = reexported.screens[0].layouts["Composed.InsuranceC.InsuranceCAccountInfoFC"]
    assert {cid.split(".")[-1]: cell for cid, cell in inner.cells.items()} == {
        cid.split(".")[-1]: cell
        for cid, cell in parse_application(first)
        .screens[0]
        .layouts["InsuranceC.InsuranceCAccountInfoFC"]
        .cells.items()
    }


def test_random_compositions_export_cleanly():
    rng = random.Random(408)
    for i in range(20):
        ws = new_workspace()
        load_application(ws, random_application(rng, index=i))
        components = sorted(
            e for e in ws.store.entity_ids() if ws.store.entity(e).kind.value == "component"
        )
        picks = rng.sample(components, k=min(len(components), rng.randint(1, 4)))
        ws.selection = Selection(tuple(picks))
        extract(ws, NewScreen("Sheet"))
        exported = parse_application(export_document(ws))
        assert validate(exported) == []
