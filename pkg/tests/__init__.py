# IssueSpotter Backend Test Suite
