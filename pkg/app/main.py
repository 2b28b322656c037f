import logging
import sys

from dotenv import load_dotenv

load_dotenv('.env')

import config
from cli.router import dispatch

logging.basicConfig(level=config.log_level())
logger = logging.getLogger(__name__)

if __name__ == '__main__':
    sys.exit(dispatch(sys.argv[1:]))
