"""
表格渲染工具

把报告行（dict 列表）经 pandas DataFrame 渲染为文本或 JSON，不含时间戳，输出逐字节稳定
"""
import json
from typing import Any, Dict, List, Sequence

import pandas as pd


def rows_to_frame(rows: Sequence[Dict[str, Any]]) -> pd.DataFrame:
    """行列表 → DataFrame（列顺序取第一行的键顺序）"""
    if not rows:
        return pd.DataFrame()
    return pd.DataFrame(list(rows), columns=list(rows[0].keys()), dtype=object)


def render_table(rows: Sequence[Dict[str, Any]], fmt: str = "text") -> str:
    """
    渲染表格

    Args:
        rows: 报告行
        fmt: "text"（DataFrame.to_string）或 "json"（records）

    Returns:
        以换行结尾的字符串
    """
    df = rows_to_frame(rows)
    if fmt == "json":
        records: List[Dict[str, Any]] = df.to_dict(orient="records")
        return json.dumps(records, ensure_ascii=False, indent=2) + "\n"
    if df.empty:
        return "(empty)\n"
    # None 显示为 "-"
    text = df.where(df.notna(), "-").to_string(index=False)
    return text + "\n"
