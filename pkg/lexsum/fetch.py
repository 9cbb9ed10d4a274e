"""Download resources (stoplists, lexicons, helper scripts) and read script descriptions."""

import logging
import os
import re
from urllib.parse import urlparse

import requests

from lexsum.errors import ConfigError, InputError, MissingFile

logger = logging.getLogger(__name__)

USER_AGENT = 'lexsum/1.0'
TIMEOUT = 30

_DOCSTRING = re.compile(r'"""(.*?)"""|\'\'\'(.*?)\'\'\'', re.DOTALL)


def raw_url(url: str) -> str:
    """Rewrite a GitHub ``/blob/`` page URL to its raw.githubusercontent.com form."""
    parsed = urlparse(url)
    if not parsed.scheme or not parsed.netloc:
        raise ConfigError(f'Invalid URL format: {url!r}')
    if 'github.com' in parsed.netloc and '/blob/' in parsed.path and 'raw.githubusercontent.com' not in parsed.netloc:
        repo_path, file_path = parsed.path.split('/blob/', 1)
        url = f'{parsed.scheme}://raw.githubusercontent.com{repo_path}/refs/heads/{file_path}'
        logger.info('Converted GitHub blob URL to raw URL: %s', url)
    return url


def download(url: str, dest) -> str:
    """Fetch ``url`` into ``dest`` (a file, or a directory to keep the URL's file name)."""
    url = raw_url(url.strip())
    if os.path.isdir(dest):
        name = os.path.basename(urlparse(url).path) or 'download.txt'
        dest = os.path.join(dest, name)
    try:
        response = requests.get(url, timeout=TIMEOUT, headers={'User-Agent': USER_AGENT})
        response.raise_for_status()
    except requests.exceptions.HTTPError as e:
        raise InputError(f'HTTP error downloading {url}: {e.response.status_code} {e.response.reason}') from e
    except requests.exceptions.RequestException as e:
        raise InputError(f'Error downloading {url}: {e}') from e
    with open(dest, 'wb') as f:
        f.write(response.content)
    logger.info('Saved %d bytes to %s', len(response.content), dest)
    return dest


def extract_docstring(filepath) -> str | None:
    """First triple-quoted string of a Python file with its common indent removed."""
    if not os.path.isfile(filepath):
        raise MissingFile(f'Script not found: {filepath}')
    with open(filepath, 'r', encoding='utf-8') as f:
        match = _DOCSTRING.search(f.read())
    if not match:
        return None
    lines = (match.group(1) if match.group(1) is not None else match.group(2)).strip().split('\n')
    indents = [len(l) - len(l.lstrip()) for l in lines[1:] if l.strip()]
    if indents:
        cut = min(indents)
        lines = [lines[0]] + [l[cut:] if l.strip() else '' for l in lines[1:]]
    return '\n'.join(lines).strip()


def list_scripts(scripts_dir) -> list[dict]:
    """Helper scripts in name order with the first paragraph of each docstring."""
    if not os.path.isdir(scripts_dir):
        return []
    scripts = []
    for name in sorted(os.listdir(scripts_dir)):
        path = os.path.join(scripts_dir, name)
        if name.endswith('.py') and os.path.isfile(path):
            doc = extract_docstring(path) or ''
            scripts.append({'name': name, 'path': path, 'description': doc.split('\n\n', 1)[0].strip()})
    return scripts
