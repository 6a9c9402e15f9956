"""
报告文件的原子写入。

先写同目录临时文件，fsync 后 os.replace 到目标路径，目标文件不会出现半截 JSON。
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any

logger = logging.getLogger(__name__)


def atomic_write_json(target: Path | str, data: Any, *, mkdir: bool = True, indent: int | None = 2) -> Path:
    """将 *data* 以 JSON 原子写入 *target*，返回目标路径。

    *mkdir* 为 True 时自动创建父目录；目标已存在时沿用其权限位。
    """
    target = Path(target)
    if mkdir:
        target.parent.mkdir(parents=True, exist_ok=True)

    try:
        orig_mode = target.stat().st_mode & 0o777
    except OSError:
        orig_mode = None

    fd, tmp_path = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            json.dump(data, f, ensure_ascii=False, indent=indent)
            f.write("\n")
            f.flush()
            os.fsync(f.fileno())
        if orig_mode is not None:
            os.chmod(tmp_path, orig_mode)
        os.replace(tmp_path, target)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise

    logger.debug("已写入 %s", target)
    return target
