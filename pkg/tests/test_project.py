import json

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from luxforge.errors import (
    DuplicateRoomName,
    SchemaViolation,
    UnknownPhotometryRef,
)
from luxforge.lumen_method import Reflectances, RoomGeometry
from luxforge.project import (
    DeviceCounts,
    PlacementSpec,
    Project,
    RoomCategory,
    RoomSpec,
    device_totals,
    load_project,
    required_illuminance,
    save_project,
    validate_project,
)


class TestRequiredIlluminance:
    def test_norm_values(self):
        assert required_illuminance(RoomCategory.LIVING_SPACE) == 50.0
        assert required_illuminance(RoomCategory.HALLWAY) == 75.0
        assert required_illuminance(RoomCategory.MAIN_SPACE) == 20.0
        assert required_illuminance(RoomCategory.ANNEX_OFFICE) == 100.0

    def test_total_over_enumeration(self):
        values = {required_illuminance(c) for c in RoomCategory}
        assert values == {50.0, 75.0, 20.0, 100.0}


class TestBundledDuplex:
    def test_room_count(self, duplex_ctx):
        assert len(duplex_ctx.project.rooms) == 23

    def test_first_three_rows_lamp_sum(self, duplex_ctx):
        rooms = duplex_ctx.project.rooms[:3]
        assert [r.name for r in rooms] == [
            "Hallway access",
            "Hallway1 ground floor",
            "Hallway2 ground floor",
        ]
        assert sum(r.devices.lamps for r in rooms) == 5

    def test_totals_match_independent_tally(self, duplex_path, duplex_ctx):
        # oracle: column sums straight off the JSON document
        doc = json.loads(duplex_path.read_text(encoding="utf-8"))
        keys = (
            "lamps",
            "monopolar_switches",
            "bipolar_switches",
            "staircase_switches",
            "monophasic_sockets",
        )
        tally = {key: sum(room["devices"][key] for room in doc["rooms"]) for key in keys}
        totals = device_totals(duplex_ctx.project)
        assert totals == DeviceCounts(**tally)

    def test_paper_measured_rooms(self, duplex_ctx):
        big = duplex_ctx.project.room("Big room tip 2")
        hall = duplex_ctx.project.room("Hallway1 level1")
        assert (big.geometry.length, big.geometry.width) == (4.8, 4.2)
        assert (hall.geometry.length, hall.geometry.width) == (5.8, 1.6)

    def test_validates_clean(self, duplex_ctx):
        issues = validate_project(duplex_ctx.project, duplex_ctx.distributions)
        assert [i for i in issues if i.severity == "error"] == []

    def test_labels_preserve_printed_numbering(self, duplex_ctx):
        labels = [room.label for room in duplex_ctx.project.rooms]
        assert labels[:12] == [str(n) for n in range(1, 13)]
        assert labels[12:16] == ["", "", "", ""]
        assert labels[16] == "13"
        assert labels[21] == "21"


class TestDeviceTotals:
    def test_empty_project(self):
        assert device_totals(Project(name="empty")) == DeviceCounts()

    def test_additive_over_concatenation(self, duplex_ctx):
        rooms = duplex_ctx.project.rooms
        first = Project(name="a", rooms=rooms[:7])
        second = Project(name="b", rooms=rooms[7:])
        combined = device_totals(duplex_ctx.project)
        assert combined == device_totals(first) + device_totals(second)


class TestLoadSave:
    def test_save_load_identity_on_bundled(self, duplex_ctx):
        assert load_project(save_project(duplex_ctx.project)) == duplex_ctx.project

    def test_canonical_reserialization_stable(self, duplex_ctx):
        once = save_project(duplex_ctx.project)
        assert save_project(load_project(once)) == once

    def test_duplicate_room_name(self):
        doc = {
            "name": "x",
            "rooms": [
                {"name": "Garage", "category": "main_space"},
                {"name": "Garage", "category": "main_space"},
            ],
        }
        with pytest.raises(DuplicateRoomName):
            load_project(json.dumps(doc))

    def test_unknown_photometry_ref(self):
        doc = {
            "name": "x",
            "photometry": {},
            "rooms": [
                {
                    "name": "A",
                    "category": "hallway",
                    "geometry": {"length": 4.0, "width": 3.0, "height": 2.8},
                    "placements": [
                        {"photometry": "ghost", "x": 1.0, "y": 1.0, "mount_height": 1.0}
                    ],
                }
            ],
        }
        with pytest.raises(UnknownPhotometryRef):
            load_project(json.dumps(doc))

    def test_unknown_field_rejected_with_path(self):
        doc = {"name": "x", "rooms": [{"name": "A", "category": "hallway", "beds": 2}]}
        with pytest.raises(SchemaViolation) as err:
            load_project(json.dumps(doc))
        assert err.value.path == "rooms[0].beds"

    def test_bad_category_path(self):
        doc = {"name": "x", "rooms": [{"name": "A", "category": "ballroom"}]}
        with pytest.raises(SchemaViolation) as err:
            load_project(json.dumps(doc))
        assert err.value.path == "rooms[0].category"

    def test_invalid_json(self):
        with pytest.raises(SchemaViolation):
            load_project("{not json")

    def test_defaults_filled(self):
        project = load_project(json.dumps({"name": "bare"}))
        assert project.k_dep == 1.25
        assert project.default_flux_per_lamp == 550.0
        assert project.rooms == ()


class TestValidateProject:
    def test_geometry_contradiction_reported(self):
        project = Project(
            name="x",
            rooms=(
                RoomSpec(
                    name="bad",
                    category=RoomCategory.LIVING_SPACE,
                    geometry=RoomGeometry(4.0, 4.0, 2.4, 1.6, 0.8),
                    devices=DeviceCounts(lamps=1),
                ),
            ),
        )
        issues = validate_project(project)
        assert [i.code for i in issues] == ["geometry-contradiction"]

    def test_compliant_room_no_issues(self):
        project = Project(
            name="x",
            rooms=(
                RoomSpec(
                    name="fine",
                    category=RoomCategory.LIVING_SPACE,
                    geometry=RoomGeometry(4.0, 4.0, 2.8, 1.6, 0.0),
                    devices=DeviceCounts(lamps=2),
                ),
            ),
        )
        assert validate_project(project) == []

    def test_zero_lamps_warning(self):
        project = Project(
            name="x",
            rooms=(RoomSpec(name="dark", category=RoomCategory.HALLWAY),),
        )
        issues = validate_project(project)
        assert [(i.severity, i.code) for i in issues] == [("warning", "no-lamps")]

    def test_missing_geometry_only_when_dimensioning(self):
        project = Project(
            name="x",
            rooms=(
                RoomSpec(
                    name="inventory only",
                    category=RoomCategory.MAIN_SPACE,
                    devices=DeviceCounts(lamps=1),
                ),
            ),
        )
        assert validate_project(project) == []
        issues = validate_project(project, for_dimensioning=True)
        assert [i.code for i in issues] == ["missing-geometry"]

    def test_placement_out_of_bounds(self):
        project = Project(
            name="x",
            photometry={"d": "photometry/diffuse_downlight.ies"},
            rooms=(
                RoomSpec(
                    name="r",
                    category=RoomCategory.HALLWAY,
                    geometry=RoomGeometry(4.0, 3.0, 2.8, 1.6, 0.0),
                    devices=DeviceCounts(lamps=1),
                    placements=(PlacementSpec("d", 5.0, 1.0, 1.2),),
                ),
            ),
        )
        issues = validate_project(project)
        assert "placement-out-of-bounds" in {i.code for i in issues}


# --- generated round-trip ----------------------------------------------------

_names = st.text(alphabet="abcdefgh ", min_size=1, max_size=10).map(str.strip).filter(bool)


@st.composite
def projects(draw):
    room_names = draw(
        st.lists(_names, min_size=0, max_size=5, unique=True)
    )
    rooms = []
    for name in room_names:
        has_geometry = draw(st.booleans())
        geometry = None
        placements = ()
        if has_geometry:
            geometry = RoomGeometry(
                length=draw(st.floats(1.0, 10.0)),
                width=draw(st.floats(1.0, 10.0)),
                height=draw(st.floats(2.2, 4.0)),
                useful_plane_height=0.8,
                suspension_drop=0.0,
            )
            if draw(st.booleans()):
                placements = (
                    PlacementSpec(
                        photometry="sample",
                        x=draw(st.floats(0.0, 1.0)),
                        y=draw(st.floats(0.0, 1.0)),
                        mount_height=draw(st.floats(0.5, 2.0)),
                        orientation=draw(st.floats(0.0, 359.0)),
                        lamps=draw(st.integers(1, 3)),
                        flux_per_lamp=draw(st.floats(100.0, 2000.0)),
                    ),
                )
        rooms.append(
            RoomSpec(
                name=name,
                category=draw(st.sampled_from(list(RoomCategory))),
                geometry=geometry,
                reflectances=Reflectances(
                    ceiling=draw(st.sampled_from([0.3, 0.5, 0.7])),
                    walls=draw(st.sampled_from([0.3, 0.5])),
                ),
                devices=DeviceCounts(
                    lamps=draw(st.integers(0, 5)),
                    monophasic_sockets=draw(st.integers(0, 5)),
                ),
                placements=placements,
                utilization=draw(st.one_of(st.none(), st.floats(0.2, 1.0))),
                label=draw(st.one_of(st.none(), _names)),
            )
        )
    return Project(
        name=draw(_names),
        k_dep=draw(st.floats(1.0, 2.0)),
        default_flux_per_lamp=draw(st.floats(100.0, 2000.0)),
        photometry={"sample": "photometry/sample.ies"},
        rooms=tuple(rooms),
    )


@settings(
    max_examples=80, deadline=None, suppress_health_check=[HealthCheck.large_base_example]
)
@given(projects())
def test_roundtrip_identity_generated(project):
    assert load_project(save_project(project)) == project
