from FSEE.utils.io.csv_writer import read_csv, render_csv, render_json, write_csv, write_json

__all__ = ["read_csv", "render_csv", "render_json", "write_csv", "write_json"]
