"""Rendering and storage of analyzer tables and verdict files.

Files are written to a temporary sibling and moved into place with
``os.replace``, so a reader never observes a half-written output. Every
write reports the SHA256 of the content for the run log.
"""

import csv
import hashlib
import io
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Literal

from pydantic import BaseModel

from src.domain.schemas.complexity import CSV_COLUMNS, ComplexityTable

logger = logging.getLogger(__name__)

OutputFormat = Literal["csv", "json"]


def table_to_csv(table: ComplexityTable) -> str:
    """CSV with header n,p,pf,pal,rho_ab,converged; a missing pf is an empty cell."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in table.rows():
        writer.writerow(
            [
                row.n,
                row.p,
                "" if row.pf is None else row.pf,
                row.pal,
                row.rho_ab,
                "true" if row.converged else "false",
            ]
        )
    return buffer.getvalue()


def to_json(record: BaseModel | list[BaseModel]) -> str:
    """Stable JSON rendering: aliases applied (``pass``), two-space indent."""
    if isinstance(record, list):
        payload = [item.model_dump(mode="json", by_alias=True) for item in record]
    else:
        payload = record.model_dump(mode="json", by_alias=True)
    return json.dumps(payload, indent=2) + "\n"


def render_table(table: ComplexityTable, fmt: OutputFormat) -> str:
    if fmt == "csv":
        return table_to_csv(table)
    return json.dumps([row.model_dump(mode="json") for row in table.rows()], indent=2) + "\n"


def save_output(path: str | Path, content: str) -> tuple[str, str, int]:
    """Write ``content`` to ``path`` atomically and return metadata.

    Returns:
        Tuple of (file_path, file_hash, file_size):
        - file_path: absolute path of the written file
        - file_hash: SHA256 of the encoded content
        - file_size: size in bytes
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    data = content.encode("utf-8")
    file_hash = hashlib.sha256(data).hexdigest()

    fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent)
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp_name, target)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise

    logger.info(f"Wrote {target} ({len(data)} bytes, sha256 {file_hash})")
    return str(target.absolute()), file_hash, len(data)
