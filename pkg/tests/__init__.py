"""Test suite for AuditEng V2."""
