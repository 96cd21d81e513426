"""Terminal, Markdown and CSV rendering of command output."""

from fractions import Fraction
from typing import Dict, List

import colorama
import pandas as pd
from bs4 import BeautifulSoup
from colorama import Fore, Style
from markdownify import markdownify as md

colorama.init()

STATUS_COLORS = {
    "match": Fore.GREEN,
    "tight": Fore.GREEN,
    "loose": Fore.YELLOW,
    "mismatch": Fore.RED,
}


def rows_frame(rows: List[Dict]) -> pd.DataFrame:
    frame = pd.DataFrame(rows)
    for column in frame.columns:
        if frame[column].map(lambda x: isinstance(x, Fraction)).any():
            frame[column] = frame[column].map(str)
    return frame


def frame_to_markdown(frame: pd.DataFrame) -> str:
    """Render a DataFrame as a Markdown table."""
    if frame.empty:
        return ""
    soup = BeautifulSoup(frame.to_html(index=False), "html.parser")
    table = soup.find("table")
    # pandas styling attributes would survive as noise
    for tag in table.find_all(True):
        tag.attrs = {}
    return md(str(table)).strip()


def frame_to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False)


def colorize(text: str, status: str) -> str:
    color = STATUS_COLORS.get(status)
    return f"{color}{text}{Style.RESET_ALL}" if color else text


def headline(text: str, ok: bool) -> str:
    return (Fore.GREEN if ok else Fore.RED) + text + Style.RESET_ALL
