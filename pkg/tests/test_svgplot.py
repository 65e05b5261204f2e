"""SVG emitters: well-formed XML, expected structure, byte determinism."""

import xml.etree.ElementTree as ET

import numpy as np
import pytest

from gapfair.analysis import violin_summary
from gapfair.svgplot import scatter_svg, violin_svg

SVG_NS = "{http://www.w3.org/2000/svg}"


def _parse(svg: str) -> ET.Element:
    return ET.fromstring(svg)


def _tags(root: ET.Element, tag: str) -> list[ET.Element]:
    return root.findall(f".//{SVG_NS}{tag}")


CLOUD = [(0.1, 0.6), (0.2, 0.8), (0.05, 0.5), (0.3, 0.85)]
FRONT = [(0.05, 0.5), (0.1, 0.6), (0.3, 0.85)]


class TestScatter:
    def test_well_formed_with_declared_size(self):
        root = _parse(scatter_svg(CLOUD, FRONT, "t", "x", "y"))
        assert root.tag == f"{SVG_NS}svg"
        assert root.get("width") == "640"
        assert root.get("height") == "480"
        assert root.get("viewBox") == "0 0 640 480"

    def test_exactly_one_polyline_with_one_vertex_per_front_point(self):
        root = _parse(scatter_svg(CLOUD, FRONT, "t", "x", "y"))
        polylines = _tags(root, "polyline")
        assert len(polylines) == 1
        vertices = polylines[0].get("points").split()
        assert len(vertices) == len(FRONT)

    def test_circle_per_cloud_and_front_point(self):
        root = _parse(scatter_svg(CLOUD, FRONT, "t", "x", "y"))
        assert len(_tags(root, "circle")) == len(CLOUD) + len(FRONT)

    def test_front_vertices_follow_given_order(self):
        svg = scatter_svg([], [(0.0, 0.5), (1.0, 0.9)], "t", "x", "y")
        (polyline,) = _tags(_parse(svg), "polyline")
        first, second = polyline.get("points").split()
        x_first = float(first.split(",")[0])
        x_second = float(second.split(",")[0])
        assert x_first < x_second

    def test_single_point_front_renders(self):
        svg = scatter_svg([], [(0.1, 0.7)], "t", "x", "y")
        (polyline,) = _tags(_parse(svg), "polyline")
        assert len(polyline.get("points").split()) == 1

    def test_empty_front_rejected(self):
        with pytest.raises(ValueError):
            scatter_svg(CLOUD, [], "t", "x", "y")

    def test_labels_are_escaped(self):
        svg = scatter_svg(CLOUD, FRONT, "a < b & c", "x", "y")
        texts = [t.text for t in _tags(_parse(svg), "text")]
        assert "a < b & c" in texts
        assert "&amp;" in svg

    def test_byte_deterministic(self):
        a = scatter_svg(CLOUD, FRONT, "t", "x", "y")
        b = scatter_svg(CLOUD, FRONT, "t", "x", "y")
        assert a == b


class TestViolin:
    @pytest.fixture
    def summary(self):
        values = np.random.default_rng(0).normal(10.0, 2.0, 200)
        return violin_summary(values, variable="age", group="race=Caucasian")

    def test_polygon_mirrors_the_grid(self, summary):
        root = _parse(violin_svg(summary))
        polygons = _tags(root, "polygon")
        assert len(polygons) == 1
        vertices = polygons[0].get("points").split()
        assert len(vertices) == 2 * summary.grid.size
        # Mirrored halves share the same y sequence.
        ys = [v.split(",")[1] for v in vertices]
        assert ys[: summary.grid.size] == ys[summary.grid.size:][::-1]

    def test_three_quartile_lines_inside_the_polygon_span(self, summary):
        root = _parse(violin_svg(summary))
        # Chrome contributes axis and tick lines; quartile lines are the
        # ones with stroke-width 1.5.
        quartile_lines = [
            line for line in _tags(root, "line")
            if line.get("stroke-width") == "1.5"
        ]
        assert len(quartile_lines) == 3
        labels = [t.text for t in _tags(root, "text")]
        assert any(t.startswith("median=") for t in labels)

    def test_default_title_names_variable_and_group(self, summary):
        texts = [t.text for t in _tags(_parse(violin_svg(summary)), "text")]
        assert "age by race=Caucasian" in texts

    def test_explicit_title_overrides(self, summary):
        texts = [t.text
                 for t in _tags(_parse(violin_svg(summary, title="T")), "text")]
        assert "T" in texts

    def test_byte_deterministic(self, summary):
        assert violin_svg(summary) == violin_svg(summary)

    def test_constant_values_still_render(self):
        summary = violin_summary(np.full(5, 3.0), variable="v", group="g")
        root = _parse(violin_svg(summary))
        assert len(_tags(root, "polygon")) == 1
