import sys

# For environment variables
from dotenv import load_dotenv
load_dotenv() # Load environment variables

from mumford_tools.cli import main

if __name__ == "__main__":
    sys.exit(main())
