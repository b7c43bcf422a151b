"""File codecs: PGM masks, JSON/JSONL records, PLY point clouds, CSV tables."""

from vessel_bifurcation.infrastructure.io.pgm import decode_pgm, encode_pgm, read_pgm, write_pgm
from vessel_bifurcation.infrastructure.io.ply import read_ply_vertex_count, render_ply, write_ply
from vessel_bifurcation.infrastructure.io.records import read_json, read_jsonl, write_json, write_jsonl
from vessel_bifurcation.infrastructure.io.tables import POINT_COLUMNS, points_frame, write_csv

__all__ = [
    "decode_pgm",
    "encode_pgm",
    "read_pgm",
    "write_pgm",
    "read_json",
    "write_json",
    "read_jsonl",
    "write_jsonl",
    "render_ply",
    "write_ply",
    "read_ply_vertex_count",
    "points_frame",
    "write_csv",
    "POINT_COLUMNS",
]
